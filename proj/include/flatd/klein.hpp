#pragma once
// Two-bit entry codes for diagonal holonomy matrices, packed-row arithmetic.
//
// An entry describes what one holonomy element does on one lattice coordinate:
// the diagonal sign (+1 or -1) and the translation part (0 or 1/2 mod 1).
// Codes pack that as (sign << 1) | frac:
//
//   0 = (+1, 0)    1 = (+1, 1/2)    2 = (-1, 0)    3 = (-1, 1/2)
//
// Composing two such maps multiplies the signs and adds the translations
// mod 1, and since -1/2 == 1/2 mod 1 both bits just XOR. A whole row packs
// into one 64-bit word, two bits per column, so the row product is a single
// XOR and the predicates below are branch-free mask checks.

#include <cstdint>
#include <string>
#include <vector>

namespace flatd {

using entry_t = unsigned;        // value in 0..3
using row_t = std::uint64_t;     // packed row, column j at bits 2j, 2j+1

constexpr int max_cols = 32;
constexpr int max_gens = 6;

constexpr row_t frac_bits = 0x5555555555555555ull;
constexpr row_t sign_bits = 0xaaaaaaaaaaaaaaaaull;

constexpr row_t cols_mask(int n) {
    return n >= max_cols ? ~row_t{0} : (row_t{1} << (2 * n)) - 1;
}

constexpr entry_t get_entry(row_t row, int j) {
    return entry_t((row >> (2 * j)) & 3u);
}

constexpr row_t set_entry(row_t row, int j, entry_t e) {
    return (row & ~(row_t{3} << (2 * j))) | (row_t(e & 3u) << (2 * j));
}

constexpr entry_t star(entry_t a, entry_t b) { return (a ^ b) & 3u; }

constexpr row_t star_rows(row_t a, row_t b) { return a ^ b; }

constexpr bool entry_sign_neg(entry_t e) { return (e & 2u) != 0; }
constexpr bool entry_frac_half(entry_t e) { return (e & 1u) != 0; }

// Column masks below are "spread": bit 2j stands for column j. Popcount works
// directly; to iterate, take countr_zero and shift right by 1 for the index.
constexpr row_t ones_cols(row_t row) {               // entries equal to 1
    return row & frac_bits & ~(row >> 1);
}
constexpr row_t sign_cols(row_t row) {               // entries 2 or 3
    return (row >> 1) & frac_bits;
}
constexpr row_t frac_cols(row_t row) {               // entries 1 or 3
    return row & frac_bits;
}
constexpr row_t support_cols(row_t row) {            // nonzero entries
    return (row | (row >> 1)) & frac_bits;
}

constexpr bool row_has_one(row_t row) { return ones_cols(row) != 0; }
constexpr bool row_all_01(row_t row) { return (row & sign_bits) == 0; }

// Sign class of the Phi map: 'p' for {0,1}, 'q' for {2,3}. Two closure
// columns have the same pointwise action kernel exactly when their Phi
// columns agree, which is what the kernel-distinctness certificate checks.
constexpr char phi(entry_t e) { return entry_sign_neg(e) ? 'q' : 'p'; }

std::string phi_row(row_t row, int n);

// Nonzero holonomy bitvectors in display order: sorted by popcount, ties by
// the ascending support tuple. For k=3 that is 1,2,4,3,5,6,7, i.e. the
// generators first, then the pairs, then the full product.
std::vector<unsigned> display_order(int k);

// "r1", "r2*r3", ... for the closure row at bitvector v.
std::string row_label(unsigned v);

}  // namespace flatd

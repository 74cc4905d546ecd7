#pragma once
// Exact affine-isometry model: x -> Sx + t with S = diag(+-1) and t in (1/2)Z^n.
// Translations are stored doubled so everything stays in int64. This module is
// the independent oracle for the matrix calculus: torsion, composition,
// relation words, and translation ranks are computed here from group-element
// semantics, never from the row predicates they are checked against.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flatd/matrix.hpp"

namespace flatd {

struct AffineIsometry {
    int n = 0;
    std::uint32_t neg = 0;                  // bit j set: sign -1 on coordinate j
    std::array<std::int64_t, max_cols> t2{};  // doubled translation

    int sign(int j) const { return (neg >> j & 1) ? -1 : 1; }
    bool is_identity() const;
    bool is_translation() const { return neg == 0; }
};

AffineIsometry identity_iso(int n);
AffineIsometry from_row(row_t row, int n);
AffineIsometry lattice_shift(int n, int j, std::int64_t units);  // x -> x + units*e_j

AffineIsometry compose(const AffineIsometry& a, const AffineIsometry& b);
AffineIsometry inverse(const AffineIsometry& a);

struct GroupRealization {
    int n = 0;
    std::vector<AffineIsometry> generators;
};

GroupRealization realize(const GenMatrix& a);

struct TorsionWitness {
    unsigned v = 0;             // holonomy bitvector of the offending coset
    AffineIsometry element;     // a concrete representative of order 2
};

// Scans every nonzero holonomy element. The coset of v consists of
// S_v x + t_v + z over integer vectors z; its square is the translation
// (S_v + I)(t_v + z), which vanishes for some z exactly when every +1
// coordinate of t_v is integral. Returns that order-2 representative.
std::optional<TorsionWitness> torsion_oracle(const GenMatrix& a);

// Word over named generators, e.g. "x^-1 y^2 x y^2" or "a b a^-1".
AffineIsometry eval_word(const std::map<std::string, AffineIsometry>& gens,
                         const std::string& word);

// Rank over Q of the translation vectors; inputs must be pure translations.
int translation_rank(const std::vector<AffineIsometry>& elems);

std::string describe(const AffineIsometry& a);  // e.g. "(-x1+1/2, x2, -x3)"

}  // namespace flatd

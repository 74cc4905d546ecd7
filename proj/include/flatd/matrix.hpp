#pragma once
// Generator matrices over the entry codes, their star-closure, and the
// validity predicates that make a matrix define a torsion-free diagonal
// crystallographic group with faithful C2^k holonomy.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "flatd/klein.hpp"

namespace flatd {

struct GenMatrix {
    int k = 0;
    int n = 0;
    std::array<row_t, max_gens> row{};  // generator i at row[i], bits above 2n clear

    entry_t at(int i, int j) const { return get_entry(row[i], j); }
    void set(int i, int j, entry_t e) { row[i] = set_entry(row[i], j, e); }

    bool operator==(const GenMatrix& o) const {
        if (k != o.k || n != o.n) return false;
        for (int i = 0; i < k; ++i)
            if (row[i] != o.row[i]) return false;
        return true;
    }
};

GenMatrix make_matrix(int k, int n, std::initializer_list<std::initializer_list<int>> rows);

// Star-closure: one row per nonzero holonomy bitvector, row(u^v) = row(u)^row(v).
// Indexed internally by the integer value of the bitvector; use display_order
// for the human-facing row sequence.
struct Closure {
    int k = 0;
    int n = 0;
    std::array<row_t, 64> row{};  // row[v] for v in 1 .. 2^k-1; row[0] = 0

    row_t at(unsigned v) const { return row[v]; }
};

Closure closure(const GenMatrix& a);

struct RowCheck {
    bool ok = true;
    std::vector<unsigned> offenders;  // closure bitvectors violating the rule
};

// Torsion-free: every closure row has an entry 1 (that coordinate obstructs
// any lift of the coset to finite order).
RowCheck is_torsion_free(const Closure& c);

// Faithful: no closure row lies entirely in {0,1} (such a row acts trivially
// on the lattice directions, so the holonomy is smaller than C2^k).
RowCheck is_faithful(const Closure& c);

struct ValidityReport {
    bool torsion_free = false;
    bool faithful = false;
    bool valid = false;  // torsion_free && (faithful || rank-one free-abelian convention)
    std::vector<unsigned> offending_rows;
};

// The single 1x1 matrix [[1]] is accepted as valid by convention: it is the
// terminal form of every torus chain and presents Z, the only group a
// one-column matrix can define without torsion.
ValidityReport validate(const GenMatrix& a);

// Count of 1-entries per closure column. For valid matrices with k >= 2 every
// count lies in {0, 2^(k-2), 2^(k-1)}, and 2^(k-1) occurs only on columns
// entirely in {0,1}; see check_column_law for the exhaustive type-level proof.
std::vector<int> column_one_counts(const Closure& c);

bool column_counts_lawful(const Closure& c);

// Verifies the one-count law over all 4^k column types (a closure column is
// determined by its k generator entries, so this covers every matrix).
bool check_column_law(int k);

// Per-column sign functional: bit i set iff generator i has sign -1 there.
// Columns are fixed by the whole holonomy group exactly when their functional
// is zero, and two columns have equal action kernels iff the functionals agree.
std::vector<unsigned> sign_functionals(const GenMatrix& a);

// Canonical representative under column permutations and invertible change of
// generators (replacing the generator rows by a closure-row basis). Total
// order: for a fixed basis, encode each column top-to-bottom (generator 1 in
// the highest bits) and sort the codes ascending; the canonical form is the
// lexicographically least such code sequence over all ordered bases.
// Guarded to k <= 4 (the basis count grows too fast beyond).
GenMatrix canonicalize(const GenMatrix& a);

// Packed canonical key for dedup sets; requires 2*k*n <= 64.
std::uint64_t canonical_key(const GenMatrix& canonical);

std::string to_text(const GenMatrix& a);  // "k n" header + k digit rows

}  // namespace flatd

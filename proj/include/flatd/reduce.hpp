#pragma once
// Column deletions (torus-fibration quotients), holonomy-drop renormalization,
// the greedy reduction loop, and the minimality certificate that proves no
// equivariant quotient to a smaller dimension exists.

#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "flatd/matrix.hpp"

namespace flatd {

// Columns whose deletion keeps every closure row with an entry 1 (0-based).
// Requires a torsion-free input; faithfulness is not needed here so the
// reduction loop can pass its own intermediate states through.
std::vector<int> deletable_columns(const GenMatrix& a);

bool col_irreducible(const GenMatrix& a);

GenMatrix delete_column(const GenMatrix& a, int j);  // j must be deletable

struct RenormResult {
    GenMatrix out;
    std::vector<int> halved_columns;     // pivot columns whose unit was halved
    std::vector<unsigned> kernel;        // bitvectors acting trivially before
    bool changed = false;
};

// Quotients out the trivially-acting part of the holonomy. Let K be the set
// of nonzero bitvectors whose closure row lies in {0,1}; their half-integer
// translations genuinely belong to the group's translation lattice, so the
// lattice refines to L' = Z^n + (1/2)span(supports of K-rows). L' admits a
// sign-diagonal basis iff that F2-span decomposes over the sign classes
// (columns grouped by equal sign functional); then each class contributes
// reduced basis vectors w_i, the basis vector of pivot column p_i becomes
// (1/2)w_i, and entries are recomputed exactly. Output presents the same
// group with k' = k - dim K generators, or the rank-n torus form [[1,0,...]]
// when the holonomy collapses entirely.
//
// When the span does not decompose the quotient is a perfectly good flat
// group but not of diagonal type, so no output matrix exists; that raises
// nondiagonal_quotient_error rather than returning a wrong matrix. The naive
// alternative (halving every touched column independently) is unsound: it
// can introduce torsion and can change the group. Both failures are pinned
// in the unit tests.
RenormResult renormalize_holonomy(const GenMatrix& a);

struct ReductionStep {
    int deleted_column = -1;             // index into the matrix of that step
    std::vector<int> renormalized_columns;
    std::vector<unsigned> holonomy_kernel;
};

struct ReductionTrace {
    GenMatrix input;
    GenMatrix final;
    std::vector<ReductionStep> steps;
    std::vector<GenMatrix> after;        // matrix state after each step
    bool blocked = false;                // deletable columns remain but every
    std::vector<int> blocked_columns;    // one leads off the diagonal form
};

// Greedy loop: delete the lowest-index usable deletable column (skipping any
// whose holonomy drop refuses to renormalize), until col-irreducible or all
// remaining deletions are blocked.
ReductionTrace reduce_fully(const GenMatrix& a);

// When col-irreducible: for each column, the first closure row in display
// order whose unique 1 sits there. none when some column has no such row
// (equivalently, when a deletable column exists).
std::optional<std::vector<unsigned>> irreducibility_certificate(const GenMatrix& a);

// All sign functionals pairwise distinct, i.e. all Phi columns distinct,
// i.e. the coordinate action kernels are pairwise different.
bool kernels_distinct(const GenMatrix& a);

struct MinimalityCertificate {
    int dimension = 0;
    std::vector<unsigned> pivot_row;     // pivot_row[j]: closure v, unique 1 at j
    std::vector<unsigned> phi_columns;   // sign functional per column, distinct
};

std::optional<MinimalityCertificate> minimality_certificate(const GenMatrix& a);

// Exhaustive search over all usable deletion sequences (same skip rule as
// reduce_fully), memoized on canonical forms; reports the smallest dimension
// of any reachable state. Guarded to matrices canonicalize can handle.
struct ReachMemo {
    std::unordered_map<std::uint64_t, int> best;
};

struct ReachResult {
    int min_dimension = 0;
    long long states = 0;  // distinct canonical states explored
};

ReachResult min_reachable_dimension(const GenMatrix& a, ReachMemo* memo = nullptr);

}  // namespace flatd

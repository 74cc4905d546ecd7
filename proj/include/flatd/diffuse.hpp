#pragma once
// First Betti number, the C2^2 diffuseness classifier, and the pipeline that
// certifies non-diffuseness of b1 = 0 groups by descending to a rank-two
// holonomy subgroup realizing the Promislow group Delta_P.

#include <optional>
#include <vector>

#include "flatd/affine.hpp"
#include "flatd/matrix.hpp"
#include "flatd/reduce.hpp"

namespace flatd {

// Rank of the holonomy-fixed sublattice: the number of closure columns lying
// entirely in {0,1}, i.e. columns with zero sign functional.
int betti1(const GenMatrix& a);

struct DeltaPWitness {
    AffineIsometry alpha, beta;
    bool relation1 = false;  // x^-1 y^2 x y^2 evaluates to the identity
    bool relation2 = false;  // y^-1 x^2 y x^2 evaluates to the identity
    int independence_rank = 0;  // rank of {alpha^2, beta^2, (alpha*beta)^2}

    bool ok() const { return relation1 && relation2 && independence_rank == 3; }
};

// Verifies that the two realized generators satisfy the Delta_P presentation
// and that their squares span a rank-3 translation lattice, which pins the
// subgroup they generate as the 3-dimensional Hantzsche-Wendt group.
// Preconditions: valid, holonomy C2^2, betti1 = 0.
DeltaPWitness deltap_witness(const GenMatrix& a);

// Same computation with the betti1 = 0 precondition lifted; used to
// cross-validate the classifier. On a valid C2^2 matrix the relation word
// x^-1 y^2 x y^2 is the translation with coordinate 4*t_y(j) on every column
// j fixed by both signs and 0 elsewhere (and symmetrically for the other
// word), so both relations hold exactly when every fixed column carries no
// half-translation, which is the classifier's NonDiffuse condition.
DeltaPWitness deltap_relations_probe(const GenMatrix& a);

struct DiffuseClassification {
    enum class Verdict { Diffuse, NonDiffuse };
    Verdict verdict = Verdict::Diffuse;
    int center_rank = 0;  // = betti1
    std::vector<int> fixed_columns;  // 0-based, zero sign functional
    // NonDiffuse only: witness computed on the matrix restricted to the
    // nonfixed columns (the fixed ones are then all zero, plain Z factors).
    std::optional<DeltaPWitness> witness;
};

// Complete decision for C2^2 holonomy: NonDiffuse iff every fixed column is
// all-zero (the group splits as Z^b1 x (a b1=0 group)), Diffuse otherwise
// (a nonzero fixed column makes the group an iterated Z-extension).
DiffuseClassification classify_c22(const GenMatrix& a);

struct HyperplaneStep {
    unsigned functional = 0;          // H = kernel of this nonzero functional
    std::vector<unsigned> basis;      // smallest independent bitvectors in H
    GenMatrix sub;                    // closure rows of the basis, same n
};

// First index-two holonomy subgroup (scanning functionals in bitvector
// order) fixing no column; nullopt when every hyperplane fixes something,
// which cannot happen while n < 2^k - 1 but is reported rather than assumed
// beyond that. Preconditions: valid, betti1 = 0.
std::optional<HyperplaneStep> b1_zero_subgroup(const GenMatrix& a);

struct PipelineStep {
    enum class Kind { Quotient, Hyperplane };
    Kind kind = Kind::Quotient;
    ReductionTrace reduction;   // Quotient steps
    HyperplaneStep hyperplane;  // Hyperplane steps
    GenMatrix state;            // matrix after this step
};

struct PipelineTrace {
    GenMatrix input;
    std::vector<PipelineStep> steps;
    GenMatrix terminal_matrix;  // C2^2, betti1 = 0
    DeltaPWitness witness;
};

// Certifies non-diffuseness of a valid betti1 = 0 matrix: reduce, restrict to
// a hyperplane subgroup keeping betti1 = 0, repeat until holonomy C2^2, then
// exhibit the Delta_P witness. Every intermediate state stays valid with
// betti1 = 0 and the holonomy rank drops at each hyperplane step.
PipelineTrace nondiffuse_pipeline(const GenMatrix& a);

}  // namespace flatd

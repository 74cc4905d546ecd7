#include "flatd/diffuse.hpp"

#include <bit>

#include "flatd/errors.hpp"

namespace flatd {

int betti1(const GenMatrix& a) {
    if (!validate(a).valid) throw precondition_error("betti1: invalid matrix");
    int b = 0;
    for (unsigned s : sign_functionals(a))
        if (s == 0) ++b;
    return b;
}

static DeltaPWitness witness_compute(const GenMatrix& a) {
    GroupRealization g = realize(a);
    DeltaPWitness w;
    w.alpha = g.generators[0];
    w.beta = g.generators[1];
    std::map<std::string, AffineIsometry> syms{{"x", w.alpha}, {"y", w.beta}};
    w.relation1 = eval_word(syms, "x^-1 y^2 x y^2").is_identity();
    w.relation2 = eval_word(syms, "y^-1 x^2 y x^2").is_identity();
    AffineIsometry ab = compose(w.alpha, w.beta);
    w.independence_rank = translation_rank(
        {compose(w.alpha, w.alpha), compose(w.beta, w.beta), compose(ab, ab)});
    return w;
}

DeltaPWitness deltap_relations_probe(const GenMatrix& a) {
    if (a.k != 2) throw precondition_error("deltap witness needs C2^2 holonomy");
    if (!validate(a).valid) throw precondition_error("deltap witness: invalid matrix");
    return witness_compute(a);
}

DeltaPWitness deltap_witness(const GenMatrix& a) {
    if (a.k != 2) throw precondition_error("deltap witness needs C2^2 holonomy");
    if (!validate(a).valid) throw precondition_error("deltap witness: invalid matrix");
    if (betti1(a) != 0) throw precondition_error("deltap witness needs betti1 = 0");
    return witness_compute(a);
}

DiffuseClassification classify_c22(const GenMatrix& a) {
    if (a.k != 2) throw precondition_error("classify: holonomy is not C2^2");
    if (!validate(a).valid) throw precondition_error("classify: invalid matrix");

    DiffuseClassification out;
    std::vector<unsigned> s = sign_functionals(a);
    bool all_fixed_zero = true;
    for (int j = 0; j < a.n; ++j) {
        if (s[j] != 0) continue;
        out.fixed_columns.push_back(j);
        for (int i = 0; i < a.k; ++i)
            if (a.at(i, j) != 0) all_fixed_zero = false;
    }
    out.center_rank = (int)out.fixed_columns.size();

    if (!all_fixed_zero) {
        // Some coordinate is fixed by the whole holonomy with a genuine
        // half-translation on it: the group maps onto Z with a smaller
        // diagonal kernel, hence is poly-Z.
        out.verdict = DiffuseClassification::Verdict::Diffuse;
        return out;
    }

    out.verdict = DiffuseClassification::Verdict::NonDiffuse;
    // Fixed columns are all zero here, so they split off as plain Z factors;
    // the witness lives on the complement.
    GenMatrix restricted;
    restricted.k = a.k;
    restricted.n = a.n - out.center_rank;
    int jj = 0;
    for (int j = 0; j < a.n; ++j) {
        if (s[j] == 0) continue;
        for (int i = 0; i < a.k; ++i) restricted.set(i, jj, a.at(i, j));
        ++jj;
    }
    out.witness = deltap_witness(restricted);
    return out;
}

std::optional<HyperplaneStep> b1_zero_subgroup(const GenMatrix& a) {
    if (!validate(a).valid) throw precondition_error("hyperplane scan: invalid matrix");
    if (betti1(a) != 0) throw precondition_error("hyperplane scan needs betti1 = 0");
    if (a.k < 3) throw precondition_error("hyperplane scan needs holonomy rank >= 3");

    Closure c = closure(a);
    for (unsigned fn = 1; fn < (1u << a.k); ++fn) {
        // H = kernel of fn; a column survives iff some row of H has a sign
        // there. (Equivalently: no column's sign functional equals fn.)
        row_t signs_seen = 0;
        for (unsigned v = 1; v < (1u << a.k); ++v)
            if (std::popcount(v & fn) % 2 == 0) signs_seen |= sign_cols(c.row[v]);
        if (signs_seen != (cols_mask(a.n) & frac_bits)) continue;

        HyperplaneStep step;
        step.functional = fn;
        std::vector<unsigned> basis;
        std::vector<char> spanned(1u << a.k, 0);
        spanned[0] = 1;
        for (unsigned v = 1; v < (1u << a.k) && (int)basis.size() < a.k - 1; ++v) {
            if (std::popcount(v & fn) % 2 != 0 || spanned[v]) continue;
            std::vector<unsigned> flip;
            for (unsigned u = 0; u < (1u << a.k); ++u)
                if (spanned[u] && !spanned[u ^ v]) flip.push_back(u ^ v);
            for (unsigned u : flip) spanned[u] = 1;
            basis.push_back(v);
        }
        step.basis = basis;
        step.sub.k = a.k - 1;
        step.sub.n = a.n;
        for (int i = 0; i < (int)basis.size(); ++i) step.sub.row[i] = c.row[basis[i]];
        return step;
    }
    return std::nullopt;
}

PipelineTrace nondiffuse_pipeline(const GenMatrix& a) {
    if (!validate(a).valid) throw precondition_error("pipeline: invalid matrix");
    if (betti1(a) != 0) throw precondition_error("pipeline needs betti1 = 0");

    PipelineTrace trace;
    trace.input = a;
    GenMatrix cur = a;
    while (cur.k > 2) {
        ReductionTrace red = reduce_fully(cur);
        cur = red.final;
        if (!red.steps.empty() || red.blocked) {
            PipelineStep st;
            st.kind = PipelineStep::Kind::Quotient;
            st.reduction = std::move(red);
            st.state = cur;
            trace.steps.push_back(std::move(st));
        }
        if (betti1(cur) != 0)
            throw std::logic_error("pipeline: betti1 drifted during reduction");
        if (cur.k <= 2) break;

        auto hs = b1_zero_subgroup(cur);
        if (!hs)
            throw precondition_error(
                "pipeline: every index-two holonomy subgroup fixes a column; "
                "cannot descend further");
        cur = hs->sub;
        PipelineStep st;
        st.kind = PipelineStep::Kind::Hyperplane;
        st.hyperplane = std::move(*hs);
        st.state = cur;
        trace.steps.push_back(std::move(st));
        if (betti1(cur) != 0)
            throw std::logic_error("pipeline: hyperplane step broke betti1 = 0");
    }

    trace.terminal_matrix = cur;
    trace.witness = deltap_witness(cur);
    if (!trace.witness.ok())
        throw std::logic_error("pipeline: terminal witness failed verification");
    return trace;
}

}  // namespace flatd

#include "flatd/reduce.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <map>

#include "flatd/errors.hpp"

namespace flatd {

std::vector<int> deletable_columns(const GenMatrix& a) {
    Closure c = closure(a);
    if (!is_torsion_free(c).ok)
        throw precondition_error("deletable_columns: input has torsion");
    row_t essential = 0;  // spread mask of columns carrying some row's unique 1
    for (unsigned v = 1; v < (1u << a.k); ++v) {
        row_t ones = ones_cols(c.row[v]);
        if (std::popcount(ones) == 1) essential |= ones;
    }
    std::vector<int> out;
    for (int j = 0; j < a.n; ++j)
        if (!(essential >> (2 * j) & 1)) out.push_back(j);
    return out;
}

bool col_irreducible(const GenMatrix& a) { return deletable_columns(a).empty(); }

GenMatrix delete_column(const GenMatrix& a, int j) {
    auto dels = deletable_columns(a);
    if (std::find(dels.begin(), dels.end(), j) == dels.end())
        throw precondition_error("delete_column: column " + std::to_string(j + 1) +
                                 " is not deletable");
    GenMatrix b;
    b.k = a.k;
    b.n = a.n - 1;
    for (int i = 0; i < a.k; ++i) {
        row_t low = a.row[i] & cols_mask(j);
        row_t high = (a.row[i] >> (2 * (j + 1))) << (2 * j);
        b.row[i] = low | high;
    }
    return b;
}

namespace {

std::uint32_t compact_cols(row_t spread) {
    std::uint32_t m = 0;
    while (spread) {
        m |= 1u << (std::countr_zero(spread) >> 1);
        spread &= spread - 1;
    }
    return m;
}

// Reduced F2 basis keyed by lowest set bit; insert keeps full reduction.
struct F2Basis {
    std::vector<std::uint32_t> vecs;

    std::uint32_t reduce(std::uint32_t x) const {
        for (auto b : vecs)
            if (x >> std::countr_zero(b) & 1) x ^= b;
        return x;
    }
    bool insert(std::uint32_t x) {
        x = reduce(x);
        if (!x) return false;
        for (auto& b : vecs)
            if (b >> std::countr_zero(x) & 1) b ^= x;
        vecs.push_back(x);
        return true;
    }
};

}  // namespace

RenormResult renormalize_holonomy(const GenMatrix& a) {
    Closure c = closure(a);
    if (!is_torsion_free(c).ok)
        throw precondition_error("renormalize_holonomy: input has torsion");

    std::vector<unsigned> kernel;
    for (unsigned v = 1; v < (1u << a.k); ++v)
        if (row_all_01(c.row[v])) kernel.push_back(v);
    if (kernel.empty()) return {a, {}, {}, false};

    // Span of the kernel-row supports (each kernel row's ones are exactly the
    // coordinates where its half-translation lives).
    F2Basis span;
    for (unsigned v : kernel) span.insert(compact_cols(ones_cols(c.row[v])));
    int dim_v = (int)span.vecs.size();

    // Split by sign class and intersect the span with each class's column set.
    std::vector<unsigned> s = sign_functionals(a);
    std::map<unsigned, std::uint32_t> class_mask;
    for (int j = 0; j < a.n; ++j) class_mask[s[j]] |= 1u << j;

    std::vector<std::uint32_t> w;  // refined basis vectors, class-pure, reduced
    for (auto& [sig, cmask] : class_mask) {
        // V intersected with the class's coordinate subspace: eliminate the
        // span basis on the coordinates outside the class, tracking which
        // combination each row is; rows that vanish outside lie inside.
        // Augmented vectors carry (outside << 32 | combination), pivoting on
        // the outside half only, kept mutually reduced.
        auto outside_of = [](std::uint64_t aug) { return std::uint32_t(aug >> 32); };
        std::vector<std::uint64_t> ech;
        F2Basis inside;
        for (int i = 0; i < dim_v; ++i) {
            std::uint64_t aug =
                (std::uint64_t)(span.vecs[i] & ~cmask) << 32 | (1u << i);
            for (auto e : ech)
                if (outside_of(aug) >> std::countr_zero(outside_of(e)) & 1) aug ^= e;
            if (outside_of(aug)) {
                for (auto& e : ech)
                    if (outside_of(e) >> std::countr_zero(outside_of(aug)) & 1) e ^= aug;
                ech.push_back(aug);
            } else {
                std::uint32_t x = 0;
                for (int t = 0; t < dim_v; ++t)
                    if (aug >> t & 1) x ^= span.vecs[t];
                inside.insert(x);
            }
        }
        for (auto x : inside.vecs) w.push_back(x);
    }

    if ((int)w.size() != dim_v)
        throw nondiagonal_quotient_error(
            "holonomy-drop quotient leaves diagonal form: kernel translations "
            "mix sign classes");

    std::vector<int> pivots;
    for (auto x : w) pivots.push_back(std::countr_zero(x));
    std::vector<int> halved = pivots;
    std::sort(halved.begin(), halved.end());

    // Dimension of the trivially-acting subgroup.
    F2Basis kbasis;
    for (unsigned v : kernel) kbasis.insert(v);
    int kdim = (int)kbasis.vecs.size();
    assert((1u << kdim) == kernel.size() + 1);
    int k_new = a.k - kdim;

    if (k_new == 0) {
        // Whole holonomy was trivial: the group is free abelian of rank n.
        GenMatrix torus;
        torus.k = 1;
        torus.n = a.n;
        torus.set(0, 0, 1);
        return {torus, halved, kernel, true};
    }

    // Coset representatives: smallest bitvectors independent modulo the kernel.
    std::vector<char> spanned(1u << a.k, 0);
    spanned[0] = 1;
    for (unsigned v = 1; v < (1u << a.k); ++v)
        if (kbasis.reduce(v) == 0) spanned[v] = 1;
    std::vector<unsigned> reps;
    for (unsigned v = 1; v < (1u << a.k) && (int)reps.size() < k_new; ++v) {
        if (spanned[v]) continue;
        std::vector<unsigned> flip;
        for (unsigned u = 0; u < (1u << a.k); ++u)
            if (spanned[u] && !spanned[u ^ v]) flip.push_back(u ^ v);
        for (unsigned u : flip) spanned[u] = 1;
        reps.push_back(v);
    }
    assert((int)reps.size() == k_new);

    // Entries in the refined basis: pivot coordinates always come out
    // integral (frac 0); a non-pivot coordinate c picks up the pivot fracs of
    // every w_i passing through c. Signs are unchanged because each w_i stays
    // inside one sign class.
    GenMatrix out;
    out.k = k_new;
    out.n = a.n;
    for (int i = 0; i < k_new; ++i) {
        row_t old = c.row[reps[i]];
        row_t nr = 0;
        for (int j = 0; j < a.n; ++j) {
            entry_t e = get_entry(old, j);
            unsigned frac = entry_frac_half(e) ? 1 : 0;
            if (std::find(pivots.begin(), pivots.end(), j) != pivots.end()) {
                frac = 0;
            } else {
                for (int t = 0; t < (int)w.size(); ++t)
                    if (w[t] >> j & 1)
                        frac ^= entry_frac_half(get_entry(old, pivots[t])) ? 1 : 0;
            }
            nr = set_entry(nr, j, entry_t((entry_sign_neg(e) ? 2 : 0) | frac));
        }
        out.row[i] = nr;
    }

    // The construction adjoins only translations that already belong to the
    // group, so these can't fail unless the code above is wrong.
    Closure oc = closure(out);
    if (!is_torsion_free(oc).ok || !is_faithful(oc).ok)
        throw std::logic_error("renormalize_holonomy: output failed revalidation");
    for (int i = 0; i < k_new; ++i)
        if (sign_cols(out.row[i]) != sign_cols(c.row[reps[i]]))
            throw std::logic_error("renormalize_holonomy: sign drift");

    return {out, halved, kernel, true};
}

ReductionTrace reduce_fully(const GenMatrix& a) {
    ReductionTrace tr;
    tr.input = a;
    GenMatrix cur = a;
    for (;;) {
        std::vector<int> dels = deletable_columns(cur);
        if (dels.empty()) break;
        bool progressed = false;
        std::vector<int> refused;
        for (int j : dels) {
            GenMatrix cand = delete_column(cur, j);
            try {
                RenormResult rn = renormalize_holonomy(cand);
                ReductionStep step;
                step.deleted_column = j;
                step.renormalized_columns = rn.halved_columns;
                step.holonomy_kernel = rn.kernel;
                cur = rn.out;
                tr.steps.push_back(std::move(step));
                tr.after.push_back(cur);
                progressed = true;
                break;
            } catch (const nondiagonal_quotient_error&) {
                refused.push_back(j);
            }
        }
        if (!progressed) {
            tr.blocked = true;
            tr.blocked_columns = refused;
            break;
        }
    }
    tr.final = cur;
    return tr;
}

std::optional<std::vector<unsigned>> irreducibility_certificate(const GenMatrix& a) {
    Closure c = closure(a);
    std::vector<unsigned> order = display_order(a.k);
    std::vector<unsigned> pivot(a.n, 0);
    for (int j = 0; j < a.n; ++j) {
        bool found = false;
        for (unsigned v : order)
            if (ones_cols(c.row[v]) == (row_t{1} << (2 * j))) {
                pivot[j] = v;
                found = true;
                break;
            }
        if (!found) return std::nullopt;
    }
    return pivot;
}

bool kernels_distinct(const GenMatrix& a) {
    std::vector<unsigned> s = sign_functionals(a);
    std::sort(s.begin(), s.end());
    return std::adjacent_find(s.begin(), s.end()) == s.end();
}

std::optional<MinimalityCertificate> minimality_certificate(const GenMatrix& a) {
    auto cert = irreducibility_certificate(a);
    if (!cert || !kernels_distinct(a)) return std::nullopt;
    MinimalityCertificate m;
    m.dimension = a.n;
    m.pivot_row = *cert;
    m.phi_columns = sign_functionals(a);
    return m;
}

namespace {

std::uint64_t reach_key(const GenMatrix& a) {
    if (2 * a.k * a.n > 50)
        throw resource_guard_error("deletion search: matrix too large to memoize");
    std::uint64_t key = canonical_key(canonicalize(a));
    return key | (std::uint64_t)a.k << 56 | (std::uint64_t)a.n << 50;
}

int reach_dfs(const GenMatrix& a, ReachMemo& memo, long long& fresh) {
    std::uint64_t key = reach_key(a);
    auto it = memo.best.find(key);
    if (it != memo.best.end()) return it->second;
    ++fresh;
    int best = a.n;
    for (int j : deletable_columns(a)) {
        GenMatrix cand = delete_column(a, j);
        try {
            RenormResult rn = renormalize_holonomy(cand);
            best = std::min(best, reach_dfs(rn.out, memo, fresh));
        } catch (const nondiagonal_quotient_error&) {
            // quotient exists but leaves the formalism; not a reachable state
        }
    }
    memo.best[key] = best;
    return best;
}

}  // namespace

ReachResult min_reachable_dimension(const GenMatrix& a, ReachMemo* memo) {
    ReachMemo local;
    ReachMemo& m = memo ? *memo : local;
    ReachResult r;
    r.min_dimension = reach_dfs(a, m, r.states);
    return r;
}

}  // namespace flatd

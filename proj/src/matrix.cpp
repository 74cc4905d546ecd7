#include "flatd/matrix.hpp"

#include <algorithm>
#include <bit>
#include <cassert>

#include "flatd/errors.hpp"

namespace flatd {

GenMatrix make_matrix(int k, int n, std::initializer_list<std::initializer_list<int>> rows) {
    if (k < 1 || k > max_gens || n < 1 || n > max_cols)
        throw resource_guard_error("matrix size out of range (k <= " +
                                   std::to_string(max_gens) + ", n <= " +
                                   std::to_string(max_cols) + ")");
    GenMatrix a;
    a.k = k;
    a.n = n;
    int i = 0;
    for (const auto& r : rows) {
        assert(i < k && (int)r.size() == n);
        int j = 0;
        for (int e : r) a.set(i, j++, entry_t(e));
        ++i;
    }
    assert(i == k);
    return a;
}

Closure closure(const GenMatrix& a) {
    Closure c;
    c.k = a.k;
    c.n = a.n;
    c.row[0] = 0;
    for (unsigned v = 1; v < (1u << a.k); ++v)
        c.row[v] = c.row[v & (v - 1)] ^ a.row[std::countr_zero(v)];
    return c;
}

RowCheck is_torsion_free(const Closure& c) {
    RowCheck r;
    for (unsigned v : display_order(c.k))
        if (!row_has_one(c.row[v])) {
            r.ok = false;
            r.offenders.push_back(v);
        }
    return r;
}

RowCheck is_faithful(const Closure& c) {
    RowCheck r;
    for (unsigned v : display_order(c.k))
        if (row_all_01(c.row[v])) {
            r.ok = false;
            r.offenders.push_back(v);
        }
    return r;
}

ValidityReport validate(const GenMatrix& a) {
    Closure c = closure(a);
    RowCheck tf = is_torsion_free(c);
    RowCheck ff = is_faithful(c);
    ValidityReport rep;
    rep.torsion_free = tf.ok;
    rep.faithful = ff.ok;
    bool z_convention = (a.k == 1 && a.n == 1 && a.at(0, 0) == 1);
    rep.valid = tf.ok && (ff.ok || z_convention);
    for (unsigned v : display_order(a.k)) {
        bool bad = !row_has_one(c.row[v]) || row_all_01(c.row[v]);
        if (bad) rep.offending_rows.push_back(v);
    }
    if (rep.valid) rep.offending_rows.clear();
    return rep;
}

std::vector<int> column_one_counts(const Closure& c) {
    std::vector<int> counts(c.n, 0);
    for (unsigned v = 1; v < (1u << c.k); ++v) {
        row_t m = ones_cols(c.row[v]);
        while (m) {
            counts[std::countr_zero(m) >> 1]++;
            m &= m - 1;
        }
    }
    return counts;
}

static bool count_allowed(int k, int count, bool all01) {
    if (count == 0) return true;
    if (count == (1 << (k - 1))) return all01;
    if (k >= 2 && count == (k >= 2 ? (1 << (k - 2)) : -1)) return true;
    return false;
}

bool column_counts_lawful(const Closure& c) {
    std::vector<int> counts = column_one_counts(c);
    row_t fixed = cols_mask(c.n);  // columns with no sign anywhere
    for (unsigned v = 1; v < (1u << c.k); ++v) fixed &= ~(sign_cols(c.row[v]) << 1 | sign_cols(c.row[v]));
    for (int j = 0; j < c.n; ++j) {
        bool all01 = (fixed >> (2 * j)) & 1;
        if (!count_allowed(c.k, counts[j], all01)) return false;
    }
    return true;
}

bool check_column_law(int k) {
    // A closure column is the linear image of F2^k under the column's entry
    // tuple, so checking all 4^k tuples checks every matrix at once.
    for (unsigned t = 0; t < (1u << (2 * k)); ++t) {
        int count = 0;
        bool all01 = true;
        for (int i = 0; i < k; ++i)
            if (entry_sign_neg(entry_t((t >> (2 * i)) & 3u))) all01 = false;
        for (unsigned v = 1; v < (1u << k); ++v) {
            entry_t e = 0;
            for (int i = 0; i < k; ++i)
                if (v >> i & 1) e = star(e, entry_t((t >> (2 * i)) & 3u));
            if (e == 1) ++count;
        }
        if (!count_allowed(k, count, all01)) return false;
    }
    return true;
}

std::vector<unsigned> sign_functionals(const GenMatrix& a) {
    std::vector<unsigned> s(a.n, 0);
    for (int i = 0; i < a.k; ++i) {
        row_t m = sign_cols(a.row[i]);
        while (m) {
            s[std::countr_zero(m) >> 1] |= 1u << i;
            m &= m - 1;
        }
    }
    return s;
}

namespace {

using ColCodes = std::vector<std::uint16_t>;

ColCodes column_codes(const std::vector<row_t>& rows, int n) {
    int k = (int)rows.size();
    ColCodes codes(n);
    for (int j = 0; j < n; ++j) {
        unsigned code = 0;
        for (int i = 0; i < k; ++i) code = code << 2 | get_entry(rows[i], j);
        codes[j] = (std::uint16_t)code;
    }
    std::sort(codes.begin(), codes.end());
    return codes;
}

void enumerate_bases(int k, const Closure& c, std::vector<unsigned>& picked,
                     std::vector<char>& spanned, ColCodes& best) {
    if ((int)picked.size() == k) {
        std::vector<row_t> rows(k);
        for (int i = 0; i < k; ++i) rows[i] = c.row[picked[i]];
        ColCodes codes = column_codes(rows, c.n);
        if (best.empty() || codes < best) best = std::move(codes);
        return;
    }
    for (unsigned v = 1; v < (1u << k); ++v) {
        if (spanned[v]) continue;
        std::vector<unsigned> flipped;
        for (unsigned w = 0; w < (1u << k); ++w)
            if (spanned[w] && !spanned[w ^ v]) flipped.push_back(w ^ v);
        for (unsigned w : flipped) spanned[w] = 1;
        picked.push_back(v);
        enumerate_bases(k, c, picked, spanned, best);
        picked.pop_back();
        for (unsigned w : flipped) spanned[w] = 0;
    }
}

}  // namespace

GenMatrix canonicalize(const GenMatrix& a) {
    if (a.k > 4)
        throw resource_guard_error("canonicalize supports k <= 4 (basis orbit too large beyond)");
    Closure c = closure(a);
    std::vector<unsigned> picked;
    std::vector<char> spanned(1u << a.k, 0);
    spanned[0] = 1;
    ColCodes best;
    enumerate_bases(a.k, c, picked, spanned, best);
    GenMatrix out;
    out.k = a.k;
    out.n = a.n;
    for (int j = 0; j < a.n; ++j)
        for (int i = 0; i < a.k; ++i)
            out.set(i, j, entry_t((best[j] >> (2 * (a.k - 1 - i))) & 3u));
    return out;
}

std::uint64_t canonical_key(const GenMatrix& canonical) {
    assert(2 * canonical.k * canonical.n <= 64);
    std::uint64_t key = 0;
    int shift = 0;
    for (int j = 0; j < canonical.n; ++j) {
        unsigned code = 0;
        for (int i = 0; i < canonical.k; ++i) code = code << 2 | canonical.at(i, j);
        key |= (std::uint64_t)code << shift;
        shift += 2 * canonical.k;
    }
    return key;
}

std::string to_text(const GenMatrix& a) {
    std::string out = std::to_string(a.k) + " " + std::to_string(a.n) + "\n";
    for (int i = 0; i < a.k; ++i) {
        for (int j = 0; j < a.n; ++j) {
            if (j) out.push_back(' ');
            out.push_back(char('0' + a.at(i, j)));
        }
        out.push_back('\n');
    }
    return out;
}

}  // namespace flatd

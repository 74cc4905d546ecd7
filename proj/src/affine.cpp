#include "flatd/affine.hpp"

#include <cctype>
#include <cstdlib>

#include "flatd/errors.hpp"

namespace flatd {

bool AffineIsometry::is_identity() const {
    if (neg != 0) return false;
    for (int j = 0; j < n; ++j)
        if (t2[j] != 0) return false;
    return true;
}

AffineIsometry identity_iso(int n) {
    AffineIsometry a;
    a.n = n;
    return a;
}

AffineIsometry from_row(row_t row, int n) {
    AffineIsometry a;
    a.n = n;
    for (int j = 0; j < n; ++j) {
        entry_t e = get_entry(row, j);
        if (entry_sign_neg(e)) a.neg |= 1u << j;
        a.t2[j] = entry_frac_half(e) ? 1 : 0;
    }
    return a;
}

AffineIsometry lattice_shift(int n, int j, std::int64_t units) {
    AffineIsometry a;
    a.n = n;
    a.t2[j] = 2 * units;
    return a;
}

AffineIsometry compose(const AffineIsometry& a, const AffineIsometry& b) {
    if (a.n != b.n) throw precondition_error("compose: dimension mismatch");
    AffineIsometry c;
    c.n = a.n;
    c.neg = a.neg ^ b.neg;
    for (int j = 0; j < a.n; ++j)
        c.t2[j] = a.sign(j) * b.t2[j] + a.t2[j];
    return c;
}

AffineIsometry inverse(const AffineIsometry& a) {
    // (Sx + t)^-1 = Sx - St
    AffineIsometry b;
    b.n = a.n;
    b.neg = a.neg;
    for (int j = 0; j < a.n; ++j)
        b.t2[j] = -a.sign(j) * a.t2[j];
    return b;
}

GroupRealization realize(const GenMatrix& a) {
    GroupRealization g;
    g.n = a.n;
    for (int i = 0; i < a.k; ++i) g.generators.push_back(from_row(a.row[i], a.n));
    return g;
}

std::optional<TorsionWitness> torsion_oracle(const GenMatrix& a) {
    Closure c = closure(a);
    for (unsigned v : display_order(a.k)) {
        AffineIsometry g = from_row(c.row[v], a.n);
        bool solvable = true;
        AffineIsometry rep = g;
        for (int j = 0; j < a.n; ++j) {
            if (g.sign(j) < 0) continue;       // (S+I) kills this coordinate
            if (g.t2[j] % 2 != 0) {            // half-translation can't cancel
                solvable = false;
                break;
            }
            rep.t2[j] = 0;                     // shift by -t to get order 2
        }
        if (solvable) return TorsionWitness{v, rep};
    }
    return std::nullopt;
}

AffineIsometry eval_word(const std::map<std::string, AffineIsometry>& gens,
                         const std::string& word) {
    if (gens.empty()) throw precondition_error("eval_word: no generators");
    AffineIsometry acc = identity_iso(gens.begin()->second.n);
    size_t i = 0;
    while (i < word.size()) {
        if (std::isspace((unsigned char)word[i])) {
            ++i;
            continue;
        }
        if (!std::isalpha((unsigned char)word[i]))
            throw precondition_error("eval_word: expected symbol at '" + word.substr(i) + "'");
        std::string sym;
        while (i < word.size() && (std::isalnum((unsigned char)word[i]) || word[i] == '_'))
            sym.push_back(word[i++]);
        long exp = 1;
        if (i < word.size() && word[i] == '^') {
            ++i;
            size_t start = i;
            if (i < word.size() && (word[i] == '-' || word[i] == '+')) ++i;
            while (i < word.size() && std::isdigit((unsigned char)word[i])) ++i;
            if (i == start) throw precondition_error("eval_word: bad exponent");
            exp = std::strtol(word.substr(start, i - start).c_str(), nullptr, 10);
        }
        auto it = gens.find(sym);
        if (it == gens.end()) throw precondition_error("eval_word: unknown symbol '" + sym + "'");
        AffineIsometry g = exp < 0 ? inverse(it->second) : it->second;
        for (long r = 0; r < std::labs(exp); ++r) acc = compose(acc, g);
    }
    return acc;
}

int translation_rank(const std::vector<AffineIsometry>& elems) {
    if (elems.empty()) return 0;
    int n = elems[0].n;
    std::vector<std::array<std::int64_t, max_cols>> m;
    for (const auto& e : elems) {
        if (!e.is_translation())
            throw precondition_error("translation_rank: input is not a pure translation");
        m.push_back(e.t2);
    }
    // Fraction-free elimination; entries stay tiny for anything this tool builds.
    int rank = 0;
    for (int col = 0; col < n && rank < (int)m.size(); ++col) {
        int pivot = -1;
        for (int r = rank; r < (int)m.size(); ++r)
            if (m[r][col] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(m[rank], m[pivot]);
        for (int r = rank + 1; r < (int)m.size(); ++r) {
            if (m[r][col] == 0) continue;
            std::int64_t p = m[rank][col], q = m[r][col];
            for (int j = 0; j < n; ++j) m[r][j] = m[r][j] * p - m[rank][j] * q;
        }
        ++rank;
    }
    return rank;
}

std::string describe(const AffineIsometry& a) {
    std::string out = "(";
    for (int j = 0; j < a.n; ++j) {
        if (j) out += ", ";
        out += (a.sign(j) < 0 ? "-x" : "x") + std::to_string(j + 1);
        std::int64_t t = a.t2[j];
        if (t != 0) {
            out += t > 0 ? "+" : "-";
            std::int64_t u = t > 0 ? t : -t;
            if (u % 2 == 0)
                out += std::to_string(u / 2);
            else
                out += std::to_string(u) + "/2";
        }
    }
    return out + ")";
}

}  // namespace flatd

#include "flatd/klein.hpp"

#include <algorithm>
#include <bit>

namespace flatd {

std::string phi_row(row_t row, int n) {
    std::string out;
    out.reserve(n);
    for (int j = 0; j < n; ++j) out.push_back(phi(get_entry(row, j)));
    return out;
}

std::vector<unsigned> display_order(int k) {
    std::vector<unsigned> vs;
    vs.reserve((1u << k) - 1);
    for (unsigned v = 1; v < (1u << k); ++v) vs.push_back(v);
    std::sort(vs.begin(), vs.end(), [](unsigned a, unsigned b) {
        int pa = std::popcount(a), pb = std::popcount(b);
        if (pa != pb) return pa < pb;
        // Same weight: compare support tuples elementwise from the low end.
        while (a && b) {
            int la = std::countr_zero(a), lb = std::countr_zero(b);
            if (la != lb) return la < lb;
            a &= a - 1;
            b &= b - 1;
        }
        return false;
    });
    return vs;
}

std::string row_label(unsigned v) {
    std::string out;
    while (v) {
        if (!out.empty()) out.push_back('*');
        out += "r" + std::to_string(std::countr_zero(v) + 1);
        v &= v - 1;
    }
    return out;
}

}  // namespace flatd

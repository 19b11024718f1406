#ifndef HOMTW_TEST_HELPERS_HPP
#define HOMTW_TEST_HELPERS_HPP

// Brute-force oracles for expected values. These stay independent of the
// library's search code paths: plain exhaustive enumeration only.

#include "homtw/graph.hpp"

#include <cstdint>
#include <vector>

namespace homtw::testing {

// Number of homomorphisms g -> h by enumerating all |h|^|g| maps.
inline std::uint64_t brute_hom_count(const Graph& g, const Graph& h) {
    const int n = g.size(), k = h.size();
    if (n == 0) return 1;
    if (k == 0) return 0;
    std::uint64_t count = 0;
    std::vector<int> f(n, 0);
    auto edges = g.edges();
    while (true) {
        bool ok = true;
        for (auto [u, v] : edges)
            if (!h.adjacent(f[u], f[v])) { ok = false; break; }
        if (ok) ++count;
        int i = n - 1;
        while (i >= 0 && f[i] == k - 1) f[i--] = 0;
        if (i < 0) break;
        ++f[i];
    }
    return count;
}

inline bool brute_hom_exists(const Graph& g, const Graph& h) {
    const int n = g.size(), k = h.size();
    if (n == 0) return true;
    if (k == 0) return false;
    std::vector<int> f(n, 0);
    auto edges = g.edges();
    while (true) {
        bool ok = true;
        for (auto [u, v] : edges)
            if (!h.adjacent(f[u], f[v])) { ok = false; break; }
        if (ok) return true;
        int i = n - 1;
        while (i >= 0 && f[i] == k - 1) f[i--] = 0;
        if (i < 0) return false;
        ++f[i];
    }
}

// Proper k-colorability by exhaustive recursion (loopless graphs).
namespace detail {
inline bool color_rec(const Graph& g, std::vector<int>& col, int v, int k) {
    if (v == g.size()) return true;
    for (int c = 0; c < k; ++c) {
        bool ok = true;
        for (int w : g.neighbors(v))
            if (col[w] == c) { ok = false; break; }
        if (!ok) continue;
        col[v] = c;
        if (color_rec(g, col, v + 1, k)) return true;
        col[v] = -1;
    }
    return false;
}
} // namespace detail

inline bool brute_colorable(const Graph& g, int k) {
    for (int v = 0; v < g.size(); ++v)
        if (g.has_loop(v)) return false;
    std::vector<int> col(g.size(), -1);
    return detail::color_rec(g, col, 0, k);
}

inline int brute_chromatic(const Graph& g) {
    if (g.size() == 0) return 0;
    for (int k = 1;; ++k)
        if (brute_colorable(g, k)) return k;
}

} // namespace homtw::testing

#endif

#include "homtw/isomorphism.hpp"

#include "homtw/bitset.hpp"
#include "homtw/errors.hpp"

#include <algorithm>
#include <map>

namespace homtw {

namespace {

// Color refinement to a fixed point. Initial color = (degree, loop flag);
// refined by sorted multisets of neighbor colors. Colors are renumbered
// canonically each round so both graphs can be refined in lockstep.
std::vector<int> refine_colors(const Graph& a, const Graph& b, std::vector<int>& cb) {
    const int na = a.size(), nb = b.size();
    std::vector<int> ca(na), out_b(nb);
    {
        std::map<std::pair<int, int>, int> ids;
        for (int v = 0; v < na; ++v)
            ca[v] = ids.emplace(std::make_pair(a.degree(v), a.has_loop(v) ? 1 : 0),
                                static_cast<int>(ids.size())).first->second;
        for (int v = 0; v < nb; ++v) {
            auto key = std::make_pair(b.degree(v), b.has_loop(v) ? 1 : 0);
            out_b[v] = ids.emplace(key, static_cast<int>(ids.size())).first->second;
        }
    }
    while (true) {
        std::map<std::pair<int, std::vector<int>>, int> ids;
        auto signature = [](const Graph& g, const std::vector<int>& col, int v) {
            std::vector<int> sig;
            sig.reserve(g.degree(v));
            for (int w : g.neighbors(v)) sig.push_back(col[w]);
            std::sort(sig.begin(), sig.end());
            return sig;
        };
        std::vector<int> na2(na), nb2(nb);
        for (int v = 0; v < na; ++v)
            na2[v] = ids.emplace(std::make_pair(ca[v], signature(a, ca, v)),
                                 static_cast<int>(ids.size())).first->second;
        for (int v = 0; v < nb; ++v)
            nb2[v] = ids.emplace(std::make_pair(out_b[v], signature(b, out_b, v)),
                                 static_cast<int>(ids.size())).first->second;
        if (na2 == ca && nb2 == out_b) break;
        ca.swap(na2);
        out_b.swap(nb2);
    }
    cb = out_b;
    return ca;
}

struct IsoSearch {
    const Graph& a;
    const Graph& b;
    const std::vector<int>& ca;
    const std::vector<int>& cb;
    std::vector<Bitset> rows_b;
    std::vector<int> map;      // a -> b, -1 unassigned
    std::vector<char> used;    // b side
    std::vector<int> order;    // assignment order over a's vertices
    std::optional<std::chrono::steady_clock::time_point> deadline;
    std::uint64_t ticks = 0;

    bool feasible(std::size_t depth, int u, int w) {
        if (ca[u] != cb[w]) return false;
        if (a.has_loop(u) != b.has_loop(w)) return false;
        // adjacency to everything already mapped must match exactly
        for (std::size_t i = 0; i < depth; ++i) {
            int x = order[i];
            if (a.adjacent(u, x) != rows_b[w].test(map[x])) return false;
        }
        return true;
    }

    bool dfs(std::size_t depth) {
        if (deadline && ++ticks % 2048 == 0 &&
            std::chrono::steady_clock::now() > *deadline)
            throw BudgetExceeded("isomorphism search exceeded its time budget");
        if (depth == order.size()) return true;
        int u = order[depth];
        for (int w = 0; w < b.size(); ++w) {
            if (used[w] || !feasible(depth, u, w)) continue;
            map[u] = w;
            used[w] = 1;
            if (dfs(depth + 1)) return true;
            map[u] = -1;
            used[w] = 0;
        }
        return false;
    }
};

} // namespace

std::optional<std::vector<int>> isomorphic(const Graph& a, const Graph& b,
                                           const IsoOptions& opt) {
    if (a.size() != b.size() || a.edge_count() != b.edge_count()) return std::nullopt;
    const int n = a.size();
    if (n == 0) return std::vector<int>{};

    std::vector<int> cb;
    std::vector<int> ca = refine_colors(a, b, cb);
    {
        std::vector<int> ha = ca, hb = cb;
        std::sort(ha.begin(), ha.end());
        std::sort(hb.begin(), hb.end());
        if (ha != hb) return std::nullopt;
    }

    IsoSearch s{a, b, ca, cb, {}, std::vector<int>(n, -1), std::vector<char>(n, 0), {}, {}, 0};
    s.rows_b.assign(n, Bitset(n));
    for (int u = 0; u < n; ++u)
        for (int v : b.neighbors(u)) s.rows_b[u].set(v);
    if (opt.time_budget.count() > 0)
        s.deadline = std::chrono::steady_clock::now() + opt.time_budget;

    // Order: rarest color class first, then expand along adjacency so each
    // new vertex is constrained by already-mapped neighbors where possible.
    std::vector<int> class_size(n + 1, 0);
    for (int v = 0; v < n; ++v) ++class_size[ca[v]];
    std::vector<char> placed(n, 0);
    auto score = [&](int v) { return std::make_pair(class_size[ca[v]], v); };
    for (int step = 0; step < n; ++step) {
        int pick = -1;
        bool pick_attached = false;
        for (int v = 0; v < n; ++v) {
            if (placed[v]) continue;
            bool attached = false;
            for (int w : a.neighbors(v))
                if (placed[w]) { attached = true; break; }
            if (pick < 0 || (attached && !pick_attached) ||
                (attached == pick_attached && score(v) < score(pick))) {
                pick = v;
                pick_attached = attached;
            }
        }
        placed[pick] = 1;
        s.order.push_back(pick);
    }

    if (!s.dfs(0)) return std::nullopt;
    return s.map;
}

} // namespace homtw

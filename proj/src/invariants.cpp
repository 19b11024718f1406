#include "homtw/invariants.hpp"

#include "homtw/bitset.hpp"
#include "homtw/errors.hpp"

#include <algorithm>
#include <vector>

namespace homtw {

namespace {

class Deadline {
public:
    explicit Deadline(std::chrono::milliseconds budget) {
        if (budget.count() > 0)
            deadline_ = std::chrono::steady_clock::now() + budget;
    }
    void poll() {
        if (!deadline_) return;
        if (++ticks_ % 4096 == 0 && std::chrono::steady_clock::now() > *deadline_)
            throw BudgetExceeded("invariant computation exceeded its time budget");
    }

private:
    std::optional<std::chrono::steady_clock::time_point> deadline_;
    std::uint64_t ticks_ = 0;
};

// Loop-stripped adjacency rows as bitsets.
std::vector<Bitset> simple_rows(const Graph& g) {
    std::vector<Bitset> rows(g.size(), Bitset(g.size()));
    for (int u = 0; u < g.size(); ++u)
        for (int v : g.neighbors(u))
            if (v != u) rows[u].set(v);
    return rows;
}

struct CliqueSearch {
    const std::vector<Bitset>& rows;
    Deadline& dl;
    int best = 0;

    void expand(std::vector<int>& clique, Bitset cand) {
        dl.poll();
        int remaining = cand.count();
        if (static_cast<int>(clique.size()) + remaining <= best) return;
        if (remaining == 0) {
            best = std::max(best, static_cast<int>(clique.size()));
            return;
        }
        // Greedy coloring bound on candidates.
        for (int v = cand.first(); v != -1; v = cand.next(v)) {
            if (static_cast<int>(clique.size()) + cand.count() <= best) return;
            Bitset next = cand;
            next &= rows[v];
            clique.push_back(v);
            expand(clique, next);
            clique.pop_back();
            cand.reset(v);
        }
    }
};

} // namespace

int clique_number(const Graph& g, const InvariantOptions& opt) {
    if (g.size() == 0) return 0;
    Deadline dl(opt.time_budget);
    auto rows = simple_rows(g);
    CliqueSearch search{rows, dl};
    search.best = 1;
    std::vector<int> clique;
    Bitset all(g.size(), true);
    search.expand(clique, all);
    return search.best;
}

namespace {

struct ColorSearch {
    const Graph& g;
    const std::vector<Bitset>& rows;
    Deadline& dl;
    std::vector<int> color;   // -1 = uncolored
    int best;                 // best complete coloring found so far
    int lower;                // clique lower bound

    bool exhausted_at(int k_used, int colored) {
        dl.poll();
        if (colored == g.size()) {
            best = std::min(best, k_used);
            return best <= lower;
        }
        // DSATUR: most distinct neighbor colors, then highest degree,
        // then lowest index.
        int pick = -1, pick_sat = -1, pick_deg = -1;
        for (int v = 0; v < g.size(); ++v) {
            if (color[v] >= 0) continue;
            Bitset seen(g.size() + 1);
            int sat = 0;
            rows[v].for_each([&](int w) {
                if (color[w] >= 0 && !seen.test(color[w])) { seen.set(color[w]); ++sat; }
            });
            int deg = g.degree(v);
            if (sat > pick_sat || (sat == pick_sat && deg > pick_deg)) {
                pick = v; pick_sat = sat; pick_deg = deg;
            }
        }
        Bitset banned(g.size() + 1);
        rows[pick].for_each([&](int w) {
            if (color[w] >= 0) banned.set(color[w]);
        });
        for (int c = 0; c <= k_used && c + 1 < best; ++c) { // new color only if it improves
            if (banned.test(c)) continue;
            color[pick] = c;
            if (exhausted_at(std::max(k_used, c + 1), colored + 1)) { color[pick] = -1; return true; }
            color[pick] = -1;
        }
        return false;
    }
};

} // namespace

int chromatic_number(const Graph& g, const InvariantOptions& opt) {
    if (g.size() == 0) return 0;
    // Work on the loop-stripped graph.
    Graph s(g.size());
    for (auto [u, v] : g.edges())
        if (u != v) s.add_edge(u, v);
    if (s.edge_count() == 0) return 1;
    if (bipartition(s)) return 2;
    Deadline dl(opt.time_budget);
    auto rows = simple_rows(g);
    int lower = clique_number(g, opt);
    // Greedy DSATUR upper bound seed.
    int upper = 0;
    {
        std::vector<int> color(g.size(), -1);
        for (int step = 0; step < g.size(); ++step) {
            int pick = -1, pick_sat = -1, pick_deg = -1;
            for (int v = 0; v < g.size(); ++v) {
                if (color[v] >= 0) continue;
                std::vector<char> seen(g.size() + 1, 0);
                int sat = 0;
                rows[v].for_each([&](int w) {
                    if (color[w] >= 0 && !seen[color[w]]) { seen[color[w]] = 1; ++sat; }
                });
                if (sat > pick_sat || (sat == pick_sat && g.degree(v) > pick_deg)) {
                    pick = v; pick_sat = sat; pick_deg = g.degree(v);
                }
            }
            std::vector<char> banned(g.size() + 1, 0);
            rows[pick].for_each([&](int w) { if (color[w] >= 0) banned[color[w]] = 1; });
            int c = 0;
            while (banned[c]) ++c;
            color[pick] = c;
            upper = std::max(upper, c + 1);
        }
    }
    if (upper == lower) return upper;
    ColorSearch search{g, rows, dl, std::vector<int>(g.size(), -1), upper, lower};
    search.exhausted_at(0, 0);
    return search.best;
}

std::optional<int> odd_girth(const Graph& g) {
    const int n = g.size();
    for (int v = 0; v < n; ++v)
        if (g.has_loop(v)) return 1;
    int best = -1;
    std::vector<int> dist(n);
    std::vector<int> queue;
    for (int s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[s] = 0;
        queue.assign(1, s);
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int u = queue[qi];
            for (int v : g.neighbors(u)) {
                if (dist[v] < 0) {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                } else if ((dist[u] + dist[v]) % 2 == 0) {
                    int len = dist[u] + dist[v] + 1;
                    if (best < 0 || len < best) best = len;
                }
            }
        }
    }
    if (best < 0) return std::nullopt;
    return best;
}

bool is_ramified(const Graph& g) {
    const int n = g.size();
    // simple_rows already gives open neighborhoods (no vertex contains itself),
    // so a plain subset test is exact: adjacent pairs can never be nested.
    auto rows = simple_rows(g);
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
            if (u == v) continue;
            bool subset = true;
            rows[u].for_each([&](int w) {
                if (!rows[v].test(w)) subset = false;
            });
            if (subset) return false;
        }
    }
    return true;
}

bool is_square_free(const Graph& g) {
    auto rows = simple_rows(g);
    for (int u = 0; u < g.size(); ++u)
        for (int v = u + 1; v < g.size(); ++v) {
            Bitset common = rows[u];
            common &= rows[v];
            if (common.count() >= 2) return false;
        }
    return true;
}

GraphInvariants invariants(const Graph& g, const InvariantOptions& opt) {
    GraphInvariants inv;
    inv.odd_girth = odd_girth(g);
    inv.bipartite = !inv.odd_girth.has_value();
    inv.connected = is_connected(g);
    inv.ramified = is_ramified(g);
    inv.omega = clique_number(g, opt);
    inv.chi = chromatic_number(g, opt);
    return inv;
}

} // namespace homtw

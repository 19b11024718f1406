#include "homtw/hom.hpp"

#include "homtw/bitset.hpp"
#include "homtw/errors.hpp"

#include <algorithm>

namespace homtw {

namespace {

// Bag states are mixed-radix numbers over |H|: the digit at bag position i
// (bags sorted ascending) is the color of bags[i], position 0 fastest.
struct DpRunner {
    const Graph& g;
    const Graph& h;
    const NiceDecomposition& nd;
    HomMode mode;
    const DpLimits& limits;
    std::vector<Bitset> hrows;
    std::uint64_t cells = 0;
    std::optional<std::chrono::steady_clock::time_point> deadline;

    // decide/find tables
    std::vector<std::vector<char>> btab;
    // count tables
    std::vector<std::vector<mpz_class>> ctab;

    explicit DpRunner(const Graph& g_, const Graph& h_, const NiceDecomposition& nd_,
                      HomMode m, const DpLimits& lim)
        : g(g_), h(h_), nd(nd_), mode(m), limits(lim) {
        hrows.assign(h.size(), Bitset(std::max(1, h.size())));
        for (int a = 0; a < h.size(); ++a)
            for (int b : h.neighbors(a)) hrows[a].set(b);
        if (limits.time_budget.count() > 0)
            deadline = std::chrono::steady_clock::now() + limits.time_budget;
    }

    std::uint64_t table_size(std::size_t bag_size) const {
        const std::uint64_t hn = static_cast<std::uint64_t>(h.size());
        std::uint64_t cap = mode == HomMode::count ? std::max<std::uint64_t>(1, limits.max_table_cells / 8)
                                                   : limits.max_table_cells;
        std::uint64_t s = 1;
        for (std::size_t i = 0; i < bag_size; ++i) {
            if (hn == 0) return 0;
            if (s > cap / std::max<std::uint64_t>(hn, 1))
                throw LimitExceeded("DP table for a bag of size " + std::to_string(bag_size) +
                                    " over base " + std::to_string(hn) +
                                    " exceeds the table-memory limit");
            s *= hn;
        }
        if (s > cap)
            throw LimitExceeded("DP table exceeds the table-memory limit");
        return s;
    }

    void poll() {
        if (deadline && std::chrono::steady_clock::now() > *deadline)
            throw BudgetExceeded("treewidth DP exceeded its time budget");
    }

    // positions of v's graph-neighbors inside the (sorted) bag
    static std::vector<int> bag_neighbor_positions(const Graph& g, const std::vector<int>& bag,
                                                   int v) {
        std::vector<int> pos;
        for (std::size_t i = 0; i < bag.size(); ++i)
            if (bag[i] != v && g.adjacent(bag[i], v)) pos.push_back(static_cast<int>(i));
        return pos;
    }

    template <typename Table, typename Init, typename Accum, typename Mult>
    void run(std::vector<Table>& tabs, Init init, Accum accum, Mult mult) {
        const std::uint64_t hn = h.size();
        tabs.assign(nd.nodes.size(), Table{});
        auto order = nd.postorder();
        for (int id : order) {
            poll();
            const auto& node = nd.nodes[id];
            const auto& bag = node.bag;
            std::uint64_t size = table_size(bag.size());
            if (mode == HomMode::find_one && cells + size > limits.max_table_cells)
                throw LimitExceeded("DP tables kept for traceback exceed the table-memory limit");
            Table table(size, init(false));
            cells += size;
            using Role = NiceDecomposition::Role;
            switch (node.role) {
            case Role::leaf:
                table[0] = init(true);
                break;
            case Role::introduce: {
                const auto& child = tabs[node.children[0]];
                int p = static_cast<int>(std::lower_bound(bag.begin(), bag.end(), node.vertex) -
                                         bag.begin());
                std::uint64_t low_mod = 1;
                for (int i = 0; i < p; ++i) low_mod *= hn;
                auto nbr = bag_neighbor_positions(g, bag, node.vertex);
                bool vloop = g.has_loop(node.vertex);
                std::vector<int> digits(bag.size());
                for (std::uint64_t old_s = 0; old_s < child.size(); ++old_s) {
                    if (!nonzero(child[old_s])) continue;
                    // decode child digits, splice in v's position
                    std::uint64_t rest = old_s;
                    for (std::size_t i = 0; i < bag.size(); ++i) {
                        if (static_cast<int>(i) == p) continue;
                        digits[i] = static_cast<int>(rest % hn);
                        rest /= hn;
                    }
                    const std::uint64_t low = old_s % low_mod;
                    const std::uint64_t high = old_s / low_mod;
                    for (std::uint64_t c = 0; c < hn; ++c) {
                        if (vloop && !hrows[c].test(static_cast<int>(c))) continue;
                        bool ok = true;
                        for (int q : nbr)
                            if (!hrows[c].test(digits[q])) { ok = false; break; }
                        if (!ok) continue;
                        table[low + c * low_mod + high * low_mod * hn] = child[old_s];
                    }
                }
                break;
            }
            case Role::forget: {
                const auto& child = tabs[node.children[0]];
                const auto& cbag = nd.nodes[node.children[0]].bag;
                int p = static_cast<int>(std::lower_bound(cbag.begin(), cbag.end(), node.vertex) -
                                         cbag.begin());
                std::uint64_t low_mod = 1;
                for (int i = 0; i < p; ++i) low_mod *= hn;
                for (std::uint64_t s = 0; s < child.size(); ++s) {
                    if (!nonzero(child[s])) continue;
                    const std::uint64_t low = s % low_mod;
                    const std::uint64_t high = s / (low_mod * hn);
                    accum(table[low + high * low_mod], child[s]);
                }
                break;
            }
            case Role::join: {
                const auto& left = tabs[node.children[0]];
                const auto& right = tabs[node.children[1]];
                for (std::uint64_t s = 0; s < size; ++s)
                    if (nonzero(left[s]) && nonzero(right[s])) table[s] = mult(left[s], right[s]);
                break;
            }
            }
            tabs[id] = std::move(table);
            if (mode != HomMode::find_one) {
                // children tables are no longer needed
                for (int c : node.children) tabs[c] = Table{};
            }
        }
    }

    static bool nonzero(char v) { return v != 0; }
    static bool nonzero(const mpz_class& v) { return v != 0; }

    // root -> leaves walk reconstructing one witness (smallest digits first)
    std::vector<int> traceback() {
        std::vector<int> map(g.size(), -1);
        const std::uint64_t hn = h.size();
        struct Item { int node; std::uint64_t state; };
        std::vector<Item> stack{{nd.root, 0}};
        while (!stack.empty()) {
            auto [id, state] = stack.back();
            stack.pop_back();
            const auto& node = nd.nodes[id];
            using Role = NiceDecomposition::Role;
            switch (node.role) {
            case Role::leaf:
                break;
            case Role::introduce: {
                const auto& bag = node.bag;
                int p = static_cast<int>(std::lower_bound(bag.begin(), bag.end(), node.vertex) -
                                         bag.begin());
                std::uint64_t low_mod = 1;
                for (int i = 0; i < p; ++i) low_mod *= hn;
                std::uint64_t low = state % low_mod;
                std::uint64_t high = state / (low_mod * hn);
                stack.push_back({node.children[0], low + high * low_mod});
                break;
            }
            case Role::forget: {
                const auto& cbag = nd.nodes[node.children[0]].bag;
                int p = static_cast<int>(std::lower_bound(cbag.begin(), cbag.end(), node.vertex) -
                                         cbag.begin());
                std::uint64_t low_mod = 1;
                for (int i = 0; i < p; ++i) low_mod *= hn;
                std::uint64_t low = state % low_mod;
                std::uint64_t high = state / low_mod;
                const auto& child = btab[node.children[0]];
                int chosen = -1;
                for (std::uint64_t c = 0; c < hn; ++c) {
                    std::uint64_t cs = low + c * low_mod + high * low_mod * hn;
                    if (child[cs]) { chosen = static_cast<int>(c); break; }
                }
                if (chosen < 0)
                    throw Error("internal: DP traceback found no extension");
                if (map[node.vertex] >= 0 && map[node.vertex] != chosen)
                    throw Error("internal: DP traceback inconsistency");
                map[node.vertex] = chosen;
                stack.push_back({node.children[0],
                                 low + static_cast<std::uint64_t>(chosen) * low_mod +
                                     high * low_mod * hn});
                break;
            }
            case Role::join:
                stack.push_back({node.children[0], state});
                stack.push_back({node.children[1], state});
                break;
            }
        }
        for (int v = 0; v < g.size(); ++v)
            if (map[v] < 0) throw Error("internal: DP traceback left a vertex unassigned");
        return map;
    }
};

} // namespace

HomResult hom_dp(const Graph& g, const Graph& h, const NiceDecomposition& nd, HomMode mode,
                 const DpLimits& limits) {
    if (auto rep = validate_nice(g, nd); !rep.ok)
        throw PreconditionError("hom_dp: decomposition invalid for the source graph [" +
                                rep.condition + ": " + rep.detail + "]");
    if (mode == HomMode::enumerate)
        throw PreconditionError("hom_dp does not support enumerate mode");
    HomResult res;
    res.stats.dp_base = h.size();
    if (h.size() == 0) {
        res.decision = g.size() == 0;
        if (mode == HomMode::count) res.count = res.decision ? 1 : 0;
        if (res.decision && mode != HomMode::count) res.witness = Homomorphism{{}};
        return res;
    }
    DpRunner runner(g, h, nd, mode, limits);
    if (mode == HomMode::count) {
        runner.run(
            runner.ctab, [](bool one) { return mpz_class(one ? 1 : 0); },
            [](mpz_class& acc, const mpz_class& v) { acc += v; },
            [](const mpz_class& a, const mpz_class& b) { return mpz_class(a * b); });
        res.count = runner.ctab[nd.root].empty() ? mpz_class(0) : runner.ctab[nd.root][0];
        res.decision = *res.count > 0;
    } else {
        runner.run(
            runner.btab, [](bool one) { return static_cast<char>(one ? 1 : 0); },
            [](char& acc, char v) { acc = static_cast<char>(acc || v); },
            [](char, char) { return static_cast<char>(1); });
        res.decision = !runner.btab[nd.root].empty() && runner.btab[nd.root][0] != 0;
        if (res.decision && mode == HomMode::find_one)
            res.witness = Homomorphism{runner.traceback()};
    }
    res.stats.dp_cells = runner.cells;
    return res;
}

} // namespace homtw

#include "homtw/decomposition.hpp"

#include "homtw/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace homtw {

namespace {

bool tree_connected(int nodes, const std::vector<std::pair<int, int>>& edges) {
    if (nodes <= 1) return true;
    std::vector<std::vector<int>> adj(nodes);
    for (auto [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    std::vector<char> seen(nodes, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int cnt = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : adj[u])
            if (!seen[v]) { seen[v] = 1; ++cnt; stack.push_back(v); }
    }
    return cnt == nodes;
}

} // namespace

ValidationReport validate(const Graph& g, const TreeDecomposition& td) {
    const int nodes = td.node_count();
    // shape checks
    for (auto [u, v] : td.edges)
        if (u < 0 || u >= nodes || v < 0 || v >= nodes || u == v)
            return {false, "tree-structure", "edge references invalid node"};
    if (static_cast<int>(td.edges.size()) != std::max(0, nodes - 1))
        return {false, "tree-structure",
                "node/edge count mismatch: " + std::to_string(nodes) + " nodes, " +
                    std::to_string(td.edges.size()) + " edges"};
    if (!tree_connected(nodes, td.edges))
        return {false, "tree-structure", "tree is disconnected"};
    if (td.kind == TreeDecomposition::Kind::path) {
        std::vector<int> deg(nodes, 0);
        for (auto [u, v] : td.edges) { ++deg[u]; ++deg[v]; }
        for (int i = 0; i < nodes; ++i)
            if (deg[i] > 2)
                return {false, "path-structure", "node " + std::to_string(i) + " has degree > 2"};
    }
    for (const auto& bag : td.bags)
        for (int v : bag)
            if (v < 0 || v >= g.size())
                return {false, "tree-structure", "bag contains vertex " + std::to_string(v) +
                                                     " outside the graph"};
    // 1. vertex coverage
    std::vector<char> covered(g.size(), 0);
    for (const auto& bag : td.bags)
        for (int v : bag) covered[v] = 1;
    for (int v = 0; v < g.size(); ++v)
        if (!covered[v])
            return {false, "vertex-coverage", "vertex " + std::to_string(v) + " is in no bag"};
    // 2. edge coverage
    for (auto [u, v] : g.edges()) {
        bool found = false;
        for (const auto& bag : td.bags) {
            if (std::binary_search(bag.begin(), bag.end(), u) &&
                std::binary_search(bag.begin(), bag.end(), v)) {
                found = true;
                break;
            }
        }
        if (!found)
            return {false, "edge-coverage",
                    "edge " + std::to_string(u) + "-" + std::to_string(v) + " is in no bag"};
    }
    // 3. connected subtree per vertex
    std::vector<std::vector<int>> adj(nodes);
    for (auto [u, v] : td.edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    for (int v = 0; v < g.size(); ++v) {
        int start = -1, total = 0;
        for (int i = 0; i < nodes; ++i)
            if (std::binary_search(td.bags[i].begin(), td.bags[i].end(), v)) {
                if (start < 0) start = i;
                ++total;
            }
        if (total <= 1) continue;
        std::vector<char> seen(nodes, 0);
        std::vector<int> stack{start};
        seen[start] = 1;
        int cnt = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int y : adj[x]) {
                if (seen[y] || !std::binary_search(td.bags[y].begin(), td.bags[y].end(), v))
                    continue;
                seen[y] = 1;
                ++cnt;
                stack.push_back(y);
            }
        }
        if (cnt != total)
            return {false, "connected-subtree",
                    "occurrences of vertex " + std::to_string(v) + " are disconnected"};
    }
    return {true, "", ""};
}

std::vector<int> NiceDecomposition::postorder() const {
    std::vector<int> out;
    out.reserve(nodes.size());
    // iterative postorder from the root
    std::vector<std::pair<int, std::size_t>> stack{{root, 0}};
    while (!stack.empty()) {
        auto& [u, ci] = stack.back();
        if (ci < nodes[u].children.size()) {
            int c = nodes[u].children[ci++];
            stack.emplace_back(c, 0);
        } else {
            out.push_back(u);
            stack.pop_back();
        }
    }
    return out;
}

namespace {

struct NiceBuilder {
    NiceDecomposition nd;

    int add(NiceDecomposition::Role role, int vertex, std::vector<int> bag, int child0 = -1,
            int child1 = -1) {
        NiceDecomposition::Node node;
        node.role = role;
        node.vertex = vertex;
        node.bag = std::move(bag);
        int id = static_cast<int>(nd.nodes.size());
        if (child0 >= 0) {
            node.children.push_back(child0);
            nd.nodes[child0].parent = id;
        }
        if (child1 >= 0) {
            node.children.push_back(child1);
            nd.nodes[child1].parent = id;
        }
        nd.nodes.push_back(std::move(node));
        return id;
    }

    // Chain from an empty leaf introducing `bag` in ascending order.
    int leaf_chain(const std::vector<int>& bag) {
        int cur = add(NiceDecomposition::Role::leaf, -1, {});
        std::vector<int> acc;
        for (int v : bag) {
            acc.push_back(v);
            cur = add(NiceDecomposition::Role::introduce, v, acc, cur);
        }
        return cur;
    }

    // Extends the nice tree ending at `cur` (with bag `from`) to bag `to`:
    // forget from\to ascending, then introduce to\from ascending.
    int morph(int cur, const std::vector<int>& from, const std::vector<int>& to) {
        std::vector<int> acc = from;
        for (int v : from) {
            if (std::binary_search(to.begin(), to.end(), v)) continue;
            acc.erase(std::find(acc.begin(), acc.end(), v));
            cur = add(NiceDecomposition::Role::forget, v, acc, cur);
        }
        for (int v : to) {
            if (std::binary_search(from.begin(), from.end(), v)) continue;
            acc.insert(std::upper_bound(acc.begin(), acc.end(), v), v);
            cur = add(NiceDecomposition::Role::introduce, v, acc, cur);
        }
        return cur;
    }
};

} // namespace

NiceDecomposition to_nice(const TreeDecomposition& td) {
    if (td.node_count() == 0) {
        NiceBuilder nb;
        nb.nd.root = nb.add(NiceDecomposition::Role::leaf, -1, {});
        nb.nd.width = -1;
        return nb.nd;
    }
    const int nodes = td.node_count();
    std::vector<std::vector<int>> adj(nodes);
    for (auto [u, v] : td.edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
    if (!tree_connected(nodes, td.edges) ||
        static_cast<int>(td.edges.size()) != nodes - 1)
        throw PreconditionError("to_nice requires a connected tree of bags");

    NiceBuilder nb;
    // Root at bag 0. Iterative DFS producing, per node, the nice subtree
    // that ends with the node's own bag.
    struct Frame {
        int node, parent;
        std::size_t next_child = 0;
        std::vector<int> child_results;
    };
    std::vector<Frame> stack{{0, -1, 0, {}}};
    int final_result = -1;
    while (!stack.empty()) {
        Frame& f = stack.back();
        bool descended = false;
        while (f.next_child < adj[f.node].size()) {
            int c = adj[f.node][f.next_child++];
            if (c == f.parent) continue;
            stack.push_back({c, f.node, 0, {}});
            descended = true;
            break;
        }
        if (descended) continue;
        // all children done; combine
        int result;
        if (f.child_results.empty()) {
            result = nb.leaf_chain(td.bags[f.node]);
        } else {
            // each child result already ends at this node's bag
            result = f.child_results[0];
            for (std::size_t i = 1; i < f.child_results.size(); ++i)
                result = nb.add(NiceDecomposition::Role::join, -1, td.bags[f.node], result,
                                f.child_results[i]);
        }
        int node = f.node, parent = f.parent;
        stack.pop_back();
        if (parent >= 0) {
            int morphed = nb.morph(result, td.bags[node], td.bags[parent]);
            stack.back().child_results.push_back(morphed);
        } else {
            final_result = result;
        }
    }
    // forget everything above the root bag
    nb.nd.root = nb.morph(final_result, td.bags[0], {});
    if (nb.nd.nodes[nb.nd.root].bag.empty() &&
        nb.nd.nodes[nb.nd.root].role == NiceDecomposition::Role::leaf) {
        // single empty bag input; keep as is
    }
    int w = -1;
    for (const auto& n : nb.nd.nodes) w = std::max<int>(w, static_cast<int>(n.bag.size()) - 1);
    nb.nd.width = w;
    return nb.nd;
}

namespace {

// Child results in to_nice must end at the parent's bag before a join; the
// morph inside the DFS loop handles the child->parent step, so joins see
// equal bags. This helper re-checks all of it.
ValidationReport check_roles(const NiceDecomposition& nd) {
    using Role = NiceDecomposition::Role;
    if (nd.root < 0 || nd.root >= static_cast<int>(nd.nodes.size()))
        return {false, "tree-structure", "missing root"};
    if (!nd.nodes[nd.root].bag.empty())
        return {false, "tree-structure", "root bag is not empty"};
    for (std::size_t i = 0; i < nd.nodes.size(); ++i) {
        const auto& n = nd.nodes[i];
        auto diff_one = [&](const std::vector<int>& big, const std::vector<int>& small, int v) {
            if (big.size() != small.size() + 1) return false;
            std::vector<int> merged = small;
            merged.insert(std::upper_bound(merged.begin(), merged.end(), v), v);
            return merged == big;
        };
        switch (n.role) {
        case Role::leaf:
            if (!n.children.empty() || !n.bag.empty())
                return {false, "tree-structure", "leaf node " + std::to_string(i) + " malformed"};
            break;
        case Role::introduce:
            if (n.children.size() != 1 ||
                !diff_one(n.bag, nd.nodes[n.children[0]].bag, n.vertex))
                return {false, "tree-structure",
                        "introduce node " + std::to_string(i) + " malformed"};
            break;
        case Role::forget:
            if (n.children.size() != 1 ||
                !diff_one(nd.nodes[n.children[0]].bag, n.bag, n.vertex))
                return {false, "tree-structure", "forget node " + std::to_string(i) + " malformed"};
            break;
        case Role::join:
            if (n.children.size() != 2 || nd.nodes[n.children[0]].bag != n.bag ||
                nd.nodes[n.children[1]].bag != n.bag)
                return {false, "tree-structure", "join node " + std::to_string(i) + " malformed"};
            break;
        }
    }
    return {true, "", ""};
}

} // namespace

ValidationReport validate_nice(const Graph& g, const NiceDecomposition& nd) {
    auto roles = check_roles(nd);
    if (!roles.ok) return roles;
    TreeDecomposition td;
    td.bags.reserve(nd.nodes.size());
    for (const auto& n : nd.nodes) td.bags.push_back(n.bag);
    for (std::size_t i = 0; i < nd.nodes.size(); ++i)
        if (nd.nodes[i].parent >= 0)
            td.edges.emplace_back(static_cast<int>(i), nd.nodes[i].parent);
    return validate(g, td);
}

TreeDecomposition heuristic_decomposition(const Graph& g) {
    const int n = g.size();
    TreeDecomposition td;
    if (n == 0) {
        td.bags.push_back({});
        return td;
    }
    // min-fill elimination
    std::vector<std::set<int>> nb(n);
    for (int u = 0; u < n; ++u)
        for (int v : g.neighbors(u))
            if (v != u) nb[u].insert(v);
    std::vector<char> alive(n, 1);
    std::vector<int> position(n, -1);
    std::vector<std::vector<int>> bags;
    std::vector<int> elim_order;
    for (int step = 0; step < n; ++step) {
        int pick = -1;
        long best_fill = -1;
        for (int v = 0; v < n; ++v) {
            if (!alive[v]) continue;
            long fill = 0;
            for (auto it = nb[v].begin(); it != nb[v].end(); ++it)
                for (auto jt = std::next(it); jt != nb[v].end(); ++jt)
                    if (!nb[*it].count(*jt)) ++fill;
            if (pick < 0 || fill < best_fill) { pick = v; best_fill = fill; }
        }
        elim_order.push_back(pick);
        position[pick] = step;
        std::vector<int> bag{pick};
        bag.insert(bag.end(), nb[pick].begin(), nb[pick].end());
        std::sort(bag.begin(), bag.end());
        bags.push_back(bag);
        for (int x : nb[pick])
            for (int y : nb[pick])
                if (x < y) { nb[x].insert(y); nb[y].insert(x); }
        for (int x : nb[pick]) nb[x].erase(pick);
        alive[pick] = 0;
    }
    td.bags = bags;
    // attach each bag to the bag of its earliest-eliminated later neighbor
    for (int i = 0; i < n; ++i) {
        int attach = -1;
        for (int v : bags[i]) {
            if (v == elim_order[i]) continue;
            if (attach < 0 || position[v] < position[attach]) attach = v;
        }
        if (attach >= 0)
            td.edges.emplace_back(i, position[attach]);
        else if (i + 1 < n)
            td.edges.emplace_back(i, i + 1); // isolated remainder: chain on
    }
    return td;
}

TreeDecomposition restrict_decomposition(const TreeDecomposition& td,
                                          const std::vector<int>& verts) {
    std::vector<int> local;
    {
        int maxv = 0;
        for (int v : verts) maxv = std::max(maxv, v);
        local.assign(maxv + 1, -1);
        for (std::size_t i = 0; i < verts.size(); ++i) local[verts[i]] = static_cast<int>(i);
    }
    TreeDecomposition out;
    out.kind = td.kind;
    out.edges = td.edges;
    out.bags.reserve(td.bags.size());
    for (const auto& bag : td.bags) {
        std::vector<int> nb;
        for (int v : bag)
            if (v < static_cast<int>(local.size()) && local[v] >= 0) nb.push_back(local[v]);
        std::sort(nb.begin(), nb.end());
        out.bags.push_back(std::move(nb));
    }
    return out;
}

} // namespace homtw

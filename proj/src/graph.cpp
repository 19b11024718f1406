#include "homtw/graph.hpp"

#include "homtw/errors.hpp"

#include <algorithm>
#include <cstdio>

namespace homtw {

Graph Graph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    Graph g(n);
    for (auto [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw PreconditionError("edge endpoint out of range: (" + std::to_string(u) +
                                    ", " + std::to_string(v) + ") with n = " + std::to_string(n));
        g.add_edge(u, v);
    }
    return g;
}

bool Graph::adjacent(int u, int v) const {
    const auto& a = adj_[u];
    return std::binary_search(a.begin(), a.end(), v);
}

bool Graph::has_any_loop() const {
    for (int v = 0; v < size(); ++v)
        if (has_loop(v)) return true;
    return false;
}

void Graph::add_edge(int u, int v) {
    if (adjacent(u, v)) return;
    auto insert_sorted = [](std::vector<int>& a, int x) {
        a.insert(std::upper_bound(a.begin(), a.end(), x), x);
    };
    insert_sorted(adj_[u], v);
    if (u != v) insert_sorted(adj_[v], u);
    ++m_;
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> es;
    es.reserve(m_);
    for (int u = 0; u < size(); ++u)
        for (int v : adj_[u])
            if (v >= u) es.emplace_back(u, v);
    return es;
}

void Graph::set_labels(std::vector<std::vector<int>> labels) {
    if (!labels.empty() && static_cast<int>(labels.size()) != size())
        throw PreconditionError("label table size does not match vertex count");
    labels_ = std::move(labels);
}

Graph direct_product(const std::vector<Graph>& factors, std::int64_t vertex_limit) {
    if (factors.empty())
        throw PreconditionError("direct_product requires at least one factor");
    std::int64_t n = 1;
    for (const auto& f : factors) {
        if (f.size() == 0)
            throw PreconditionError("direct_product factor must be non-empty");
        if (n > vertex_limit / f.size())
            throw LimitExceeded("direct product exceeds vertex limit of " +
                                std::to_string(vertex_limit));
        n *= f.size();
    }
    const int m = static_cast<int>(factors.size());
    Graph g(static_cast<int>(n));

    std::vector<std::vector<int>> labels(n, std::vector<int>(m));
    std::vector<int> tuple(m, 0);
    for (std::int64_t idx = 0; idx < n; ++idx) {
        labels[idx] = tuple;
        for (int i = m - 1; i >= 0; --i) {
            if (++tuple[i] < factors[i].size()) break;
            tuple[i] = 0;
        }
    }

    // Enumerate edges by walking neighbor tuples coordinate-wise.
    std::vector<const std::vector<int>*> nbr(m);
    for (std::int64_t u = 0; u < n; ++u) {
        const auto& tu = labels[u];
        std::int64_t count = 1;
        for (int i = 0; i < m; ++i) {
            nbr[i] = &factors[i].neighbors(tu[i]);
            count *= static_cast<std::int64_t>(nbr[i]->size());
        }
        if (count == 0) continue;
        std::vector<int> pos(m, 0);
        while (true) {
            std::int64_t v = 0;
            for (int i = 0; i < m; ++i) v = v * factors[i].size() + (*nbr[i])[pos[i]];
            if (v >= u) g.add_edge(static_cast<int>(u), static_cast<int>(v));
            int i = m - 1;
            while (i >= 0 && ++pos[i] == static_cast<int>(nbr[i]->size())) pos[i--] = 0;
            if (i < 0) break;
        }
    }
    g.set_labels(std::move(labels));
    return g;
}

std::int64_t product_index(const std::vector<Graph>& factors, const std::vector<int>& tuple) {
    if (tuple.size() != factors.size())
        throw PreconditionError("tuple length does not match factor count");
    std::int64_t v = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (tuple[i] < 0 || tuple[i] >= factors[i].size())
            throw PreconditionError("tuple entry out of range for factor " + std::to_string(i));
        v = v * factors[i].size() + tuple[i];
    }
    return v;
}

Graph disjoint_union(const std::vector<Graph>& parts, std::vector<int>* component_of) {
    int n = 0;
    for (const auto& p : parts) n += p.size();
    Graph g(n);
    if (component_of) component_of->assign(n, 0);
    int off = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        for (auto [u, v] : parts[i].edges()) g.add_edge(off + u, off + v);
        if (component_of)
            for (int v = 0; v < parts[i].size(); ++v) (*component_of)[off + v] = static_cast<int>(i);
        off += parts[i].size();
    }
    return g;
}

std::vector<std::vector<int>> connected_components(const Graph& g) {
    const int n = g.size();
    std::vector<int> comp(n, -1);
    std::vector<std::vector<int>> out;
    std::vector<int> stack;
    for (int s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        int id = static_cast<int>(out.size());
        out.emplace_back();
        comp[s] = id;
        stack.push_back(s);
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            out[id].push_back(u);
            for (int v : g.neighbors(u))
                if (comp[v] < 0) { comp[v] = id; stack.push_back(v); }
        }
        std::sort(out[id].begin(), out[id].end());
    }
    return out;
}

bool is_connected(const Graph& g) {
    if (g.size() <= 1) return true;
    return connected_components(g).size() == 1;
}

std::optional<std::vector<int>> bipartition(const Graph& g) {
    const int n = g.size();
    std::vector<int> color(n, -1);
    std::vector<int> queue;
    for (int s = 0; s < n; ++s) {
        if (color[s] >= 0) continue;
        color[s] = 0;
        queue.assign(1, s);
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int u = queue[qi];
            for (int v : g.neighbors(u)) {
                if (v == u) return std::nullopt; // loop: odd cycle of length 1
                if (color[v] < 0) {
                    color[v] = 1 - color[u];
                    queue.push_back(v);
                } else if (color[v] == color[u]) {
                    return std::nullopt;
                }
            }
        }
    }
    return color;
}

Graph induced_subgraph(const Graph& g, const std::vector<int>& verts) {
    std::vector<int> local(g.size(), -1);
    for (std::size_t i = 0; i < verts.size(); ++i) {
        if (verts[i] < 0 || verts[i] >= g.size())
            throw PreconditionError("induced_subgraph vertex out of range");
        local[verts[i]] = static_cast<int>(i);
    }
    Graph s(static_cast<int>(verts.size()));
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (int w : g.neighbors(verts[i]))
            if (local[w] >= 0 && local[w] >= static_cast<int>(i))
                s.add_edge(static_cast<int>(i), local[w]);
    return s;
}

std::string graph_digest(const Graph& g) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t x) {
        for (int i = 0; i < 8; ++i) {
            h ^= (x >> (8 * i)) & 0xff;
            h *= 1099511628211ull;
        }
    };
    mix(static_cast<std::uint64_t>(g.size()));
    mix(static_cast<std::uint64_t>(g.edge_count()));
    for (auto [u, v] : g.edges()) {
        mix(static_cast<std::uint64_t>(u));
        mix(static_cast<std::uint64_t>(v));
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace homtw

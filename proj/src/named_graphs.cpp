#include "homtw/named_graphs.hpp"

#include "homtw/errors.hpp"

#include <algorithm>

namespace homtw {

Graph make_clique(int k) {
    if (k < 1) throw ParseError("clique requires k >= 1");
    Graph g(k);
    for (int u = 0; u < k; ++u)
        for (int v = u + 1; v < k; ++v) g.add_edge(u, v);
    return g;
}

Graph make_cycle(int n) {
    if (n < 3) throw ParseError("cycle requires n >= 3");
    Graph g(n);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

Graph make_path(int n) {
    if (n < 1) throw ParseError("path requires n >= 1");
    Graph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

Graph make_kneser(int n, int k) {
    if (k < 1 || n < k) throw ParseError("kneser requires 1 <= k <= n");
    // k-subsets in lexicographic order.
    std::vector<std::vector<int>> subsets;
    std::vector<int> cur(k);
    for (int i = 0; i < k; ++i) cur[i] = i;
    while (true) {
        subsets.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[i] == n - k + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    Graph g(static_cast<int>(subsets.size()));
    auto disjoint = [](const std::vector<int>& a, const std::vector<int>& b) {
        std::size_t i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            if (a[i] == b[j]) return false;
            if (a[i] < b[j]) ++i; else ++j;
        }
        return true;
    };
    for (std::size_t u = 0; u < subsets.size(); ++u)
        for (std::size_t v = u + 1; v < subsets.size(); ++v)
            if (disjoint(subsets[u], subsets[v]))
                g.add_edge(static_cast<int>(u), static_cast<int>(v));
    return g;
}

Graph make_grotzsch() {
    Graph g(11);
    for (int i = 0; i < 5; ++i) {
        g.add_edge(i, (i + 1) % 5);
        g.add_edge(5 + i, (i + 1) % 5);
        g.add_edge(5 + i, (i + 4) % 5);
        g.add_edge(10, 5 + i);
    }
    return g;
}

Graph make_brinkmann() {
    Graph g(21);
    for (int i = 0; i < 7; ++i) {
        g.add_edge(i, (i + 2) % 7);
        g.add_edge(7 + i, (i + 3) % 7);
        g.add_edge(7 + i, (i + 4) % 7);
        g.add_edge(7 + i, 14 + (i + 1) % 7);
        g.add_edge(7 + i, 14 + (i + 6) % 7);
        g.add_edge(14 + i, 14 + (i + 3) % 7);
    }
    return g;
}

Graph make_chvatal() {
    // Vertices: 0..3 outer square, 4..11 inner ring in the order
    // e,f,g,h,i,j,k,l of the usual drawing.
    constexpr int a = 0, b = 1, c = 2, d = 3, e = 4, f = 5, gg = 6, h = 7,
                  i = 8, j = 9, k = 10, l = 11;
    std::vector<std::pair<int, int>> es = {
        {a, b}, {b, c}, {c, d}, {d, a},
        {a, e}, {e, i}, {i, h}, {h, l}, {l, e}, {e, j},
        {a, f}, {f, gg}, {gg, k}, {k, j}, {j, f}, {f, i},
        {gg, b}, {b, h}, {h, k}, {k, d}, {d, l}, {l, gg},
        {i, c}, {c, j}};
    return Graph::from_edges(12, es);
}

Graph make_petersen() { return make_kneser(5, 2); }

Graph make_bowtie() {
    return Graph::from_edges(5, {{0, 1}, {0, 4}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
}

Graph make_k1star() { return Graph::from_edges(1, {{0, 0}}); }

namespace {

std::vector<int> parse_params(const std::string& s) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t next = s.find(',', pos);
        if (next == std::string::npos) next = s.size();
        const std::string tok = s.substr(pos, next - pos);
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError("bad numeric parameter '" + tok + "'");
        out.push_back(std::stoi(tok));
        pos = next + 1;
    }
    return out;
}

} // namespace

Graph named_graph(const std::string& id) {
    std::string name = id;
    std::vector<int> params;
    if (auto colon = id.find(':'); colon != std::string::npos) {
        name = id.substr(0, colon);
        params = parse_params(id.substr(colon + 1));
    }
    auto want = [&](std::size_t n) {
        if (params.size() != n)
            throw ParseError("graph '" + name + "' expects " + std::to_string(n) +
                             " parameter(s), got " + std::to_string(params.size()));
    };
    if (name == "clique") { want(1); return make_clique(params[0]); }
    if (name == "cycle") { want(1); return make_cycle(params[0]); }
    if (name == "path") { want(1); return make_path(params[0]); }
    if (name == "kneser") { want(2); return make_kneser(params[0], params[1]); }
    if (name == "grotzsch") { want(0); return make_grotzsch(); }
    if (name == "brinkmann") { want(0); return make_brinkmann(); }
    if (name == "chvatal") { want(0); return make_chvatal(); }
    if (name == "petersen") { want(0); return make_petersen(); }
    if (name == "bowtie") { want(0); return make_bowtie(); }
    if (name == "k1star") { want(0); return make_k1star(); }
    throw ParseError("unknown graph id '" + name + "'");
}

} // namespace homtw

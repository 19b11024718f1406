#include "homtw/pace_io.hpp"

#include "homtw/errors.hpp"

#include <fstream>
#include <sstream>

namespace homtw {

namespace {

// Lines, with comments dropped and whitespace tolerated.
std::vector<std::vector<std::string>> tokenize(std::istream& in) {
    std::vector<std::vector<std::string>> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ls(line);
        std::vector<std::string> toks;
        std::string t;
        while (ls >> t) toks.push_back(t);
        if (toks.empty() || toks[0] == "c") continue;
        lines.push_back(std::move(toks));
    }
    return lines;
}

int to_int(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError(std::string("bad ") + what + " '" + s + "'");
    }
}

int vertex_1based(const std::string& s, int n, const char* what) {
    int v = to_int(s, what);
    if (v < 1 || v > n)
        throw ParseError(std::string(what) + " " + s + " out of range 1.." + std::to_string(n));
    return v - 1;
}

} // namespace

Graph parse_pace_gr(std::istream& in) {
    auto lines = tokenize(in);
    if (lines.empty() || lines[0].size() != 4 || lines[0][0] != "p" || lines[0][1] != "tw")
        throw ParseError("expected PACE header 'p tw <n> <m>'");
    int n = to_int(lines[0][2], "vertex count");
    int m = to_int(lines[0][3], "edge count");
    Graph g(n);
    int seen = 0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].size() != 2)
            throw ParseError("bad edge line in .gr input");
        g.add_edge(vertex_1based(lines[i][0], n, "vertex"),
                   vertex_1based(lines[i][1], n, "vertex"));
        ++seen;
    }
    if (seen != m)
        throw ParseError("header announced " + std::to_string(m) + " edges, found " +
                         std::to_string(seen));
    return g;
}

void emit_pace_gr(const Graph& g, std::ostream& out) {
    auto es = g.edges();
    out << "p tw " << g.size() << " " << es.size() << "\n";
    for (auto [u, v] : es) out << u + 1 << " " << v + 1 << "\n";
}

Graph parse_dimacs(std::istream& in) {
    auto lines = tokenize(in);
    if (lines.empty() || lines[0].size() != 4 || lines[0][0] != "p" || lines[0][1] != "edge")
        throw ParseError("expected DIMACS header 'p edge <n> <m>'");
    int n = to_int(lines[0][2], "vertex count");
    int m = to_int(lines[0][3], "edge count");
    Graph g(n);
    int seen = 0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].size() != 3 || lines[i][0] != "e")
            throw ParseError("bad edge line in DIMACS input");
        g.add_edge(vertex_1based(lines[i][1], n, "vertex"),
                   vertex_1based(lines[i][2], n, "vertex"));
        ++seen;
    }
    if (seen != m)
        throw ParseError("header announced " + std::to_string(m) + " edges, found " +
                         std::to_string(seen));
    return g;
}

void emit_dimacs(const Graph& g, std::ostream& out) {
    auto es = g.edges();
    out << "p edge " << g.size() << " " << es.size() << "\n";
    for (auto [u, v] : es) out << "e " << u + 1 << " " << v + 1 << "\n";
}

Graph parse_graph_auto(std::istream& in) {
    std::stringstream buffered;
    buffered << in.rdbuf();
    std::string content = buffered.str();
    {
        std::istringstream probe(content);
        auto lines = tokenize(probe);
        if (lines.empty() || lines[0].empty() || lines[0][0] != "p")
            throw ParseError("expected a 'p tw' or 'p edge' header");
        std::istringstream again(content);
        if (lines[0].size() >= 2 && lines[0][1] == "tw") return parse_pace_gr(again);
        if (lines[0].size() >= 2 && lines[0][1] == "edge") return parse_dimacs(again);
    }
    throw ParseError("unrecognized graph format");
}

TreeDecomposition parse_pace_td(std::istream& in, int* declared_n) {
    auto lines = tokenize(in);
    if (lines.empty() || lines[0].size() != 5 || lines[0][0] != "s" || lines[0][1] != "td")
        throw ParseError("expected PACE header 's td <bags> <width+1> <n>'");
    int nbags = to_int(lines[0][2], "bag count");
    int width_plus = to_int(lines[0][3], "width");
    int n = to_int(lines[0][4], "vertex count");
    if (declared_n) *declared_n = n;
    TreeDecomposition td;
    td.bags.assign(nbags, {});
    std::vector<char> seen_bag(nbags, 0);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& t = lines[i];
        if (t[0] == "b") {
            if (t.size() < 2) throw ParseError("bad bag line");
            int id = to_int(t[1], "bag id");
            if (id < 1 || id > nbags)
                throw ParseError("bag id " + t[1] + " out of range 1.." + std::to_string(nbags));
            if (seen_bag[id - 1]) throw ParseError("duplicate bag id " + t[1]);
            seen_bag[id - 1] = 1;
            std::vector<int> bag;
            for (std::size_t j = 2; j < t.size(); ++j)
                bag.push_back(vertex_1based(t[j], n, "bag vertex"));
            std::sort(bag.begin(), bag.end());
            bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
            if (static_cast<int>(bag.size()) > width_plus)
                throw ParseError("bag " + t[1] + " larger than declared width");
            td.bags[id - 1] = std::move(bag);
        } else {
            if (t.size() != 2) throw ParseError("bad tree-edge line in .td input");
            int u = to_int(t[0], "bag id"), v = to_int(t[1], "bag id");
            if (u < 1 || u > nbags || v < 1 || v > nbags)
                throw ParseError("tree edge references bag outside 1.." + std::to_string(nbags));
            td.edges.emplace_back(u - 1, v - 1);
        }
    }
    // path kind detection: every node degree <= 2 and it is a single chain
    std::vector<int> deg(nbags, 0);
    for (auto [u, v] : td.edges) { ++deg[u]; ++deg[v]; }
    bool path = static_cast<int>(td.edges.size()) == std::max(0, nbags - 1);
    for (int d : deg) path = path && d <= 2;
    td.kind = path ? TreeDecomposition::Kind::path : TreeDecomposition::Kind::tree;
    return td;
}

void emit_pace_td(const TreeDecomposition& td, int n_graph_vertices, std::ostream& out) {
    out << "s td " << td.node_count() << " " << td.width() + 1 << " " << n_graph_vertices
        << "\n";
    for (int i = 0; i < td.node_count(); ++i) {
        out << "b " << i + 1;
        for (int v : td.bags[i]) out << " " << v + 1;
        out << "\n";
    }
    for (auto [u, v] : td.edges) out << u + 1 << " " << v + 1 << "\n";
}

Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open graph file '" + path + "'");
    return parse_graph_auto(in);
}

TreeDecomposition load_td(const std::string& path, int* declared_n) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open decomposition file '" + path + "'");
    return parse_pace_td(in, declared_n);
}

void save_graph_dimacs(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write graph file '" + path + "'");
    emit_dimacs(g, out);
}

void save_td(const TreeDecomposition& td, int n_graph_vertices, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write decomposition file '" + path + "'");
    emit_pace_td(td, n_graph_vertices, out);
}

} // namespace homtw

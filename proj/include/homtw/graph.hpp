#ifndef HOMTW_GRAPH_HPP
#define HOMTW_GRAPH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace homtw {

inline constexpr std::int64_t kDefaultVertexLimit = 1'000'000;

/// Finite undirected graph. Loops allowed, no parallel edges. Vertices are
/// dense 0-based integers. Immutable by convention once built: every
/// operation in the library is a pure function over const graphs.
///
/// Product graphs stay flat-indexed; coordinate tuples are kept side-band
/// in labels() so DP tables can index by plain vertex id.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : adj_(n) {}

    /// Builds a graph from an edge list. Endpoints out of [0, n) raise
    /// PreconditionError; duplicate edges collapse.
    static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges);

    int size() const { return static_cast<int>(adj_.size()); }
    /// Number of edges, loops counted once.
    int edge_count() const { return m_; }

    bool adjacent(int u, int v) const;
    bool has_loop(int v) const { return adjacent(v, v); }
    bool has_any_loop() const;

    /// Sorted neighbor list; contains v itself iff v has a loop.
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }

    /// Sorted list of edges as (u, v) with u <= v; loops as (v, v).
    std::vector<std::pair<int, int>> edges() const;

    void add_edge(int u, int v);

    // --- side-band product labels ---
    bool has_labels() const { return !labels_.empty(); }
    /// Per-vertex coordinate tuple; entry i is a vertex of factor i.
    const std::vector<std::vector<int>>& labels() const { return labels_; }
    void set_labels(std::vector<std::vector<int>> labels);

private:
    std::vector<std::vector<int>> adj_;
    int m_ = 0;
    std::vector<std::vector<int>> labels_;
};

/// Direct (tensor) product of the given factors, associativity-flattened:
/// one label layer with one coordinate per listed factor. Vertex index is
/// the row-major tuple rank (last coordinate varies fastest). Tuples are
/// adjacent iff they are adjacent in every coordinate.
Graph direct_product(const std::vector<Graph>& factors,
                     std::int64_t vertex_limit = kDefaultVertexLimit);

/// Row-major rank of a coordinate tuple in the product of the given factors.
std::int64_t product_index(const std::vector<Graph>& factors, const std::vector<int>& tuple);

/// Index-shifted union. When component_of is non-null it receives, per
/// result vertex, the index of the part it came from.
Graph disjoint_union(const std::vector<Graph>& parts, std::vector<int>* component_of = nullptr);

/// Connected components as sorted vertex lists, ordered by smallest member.
std::vector<std::vector<int>> connected_components(const Graph& g);

bool is_connected(const Graph& g);

/// Proper 2-coloring (values 0/1) if one exists. A loop makes this fail.
std::optional<std::vector<int>> bipartition(const Graph& g);

/// Subgraph induced on the given vertices (sorted ascending); result vertex
/// i corresponds to verts[i].
Graph induced_subgraph(const Graph& g, const std::vector<int>& verts);

/// FNV-1a digest of (n, m, sorted edge list). Stable across runs.
std::string graph_digest(const Graph& g);

} // namespace homtw

#endif

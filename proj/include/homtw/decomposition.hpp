#ifndef HOMTW_DECOMPOSITION_HPP
#define HOMTW_DECOMPOSITION_HPP

#include "homtw/graph.hpp"

#include <string>
#include <vector>

namespace homtw {

/// Tree of bags over a graph's vertices. Bags are sorted vertex lists;
/// tree edges connect bag indices.
struct TreeDecomposition {
    enum class Kind { tree, path };
    Kind kind = Kind::tree;
    std::vector<std::vector<int>> bags;
    std::vector<std::pair<int, int>> edges;

    int node_count() const { return static_cast<int>(bags.size()); }
    int width() const {
        int w = -1;
        for (const auto& b : bags) w = std::max<int>(w, static_cast<int>(b.size()) - 1);
        return w;
    }
};

struct ValidationReport {
    bool ok = true;
    std::string condition; // "tree-structure" | "path-structure" |
                           // "vertex-coverage" | "edge-coverage" | "connected-subtree"
    std::string detail;    // witness description
};

/// Checks the three decomposition conditions plus tree/path shape, reporting
/// the first violation with a witness vertex or edge.
ValidationReport validate(const Graph& g, const TreeDecomposition& td);

/// Rooted binary decomposition in introduce/forget/join normal form. Leaves
/// have empty bags and so does the root.
struct NiceDecomposition {
    enum class Role { leaf, introduce, forget, join };
    struct Node {
        Role role = Role::leaf;
        int vertex = -1;            // introduce/forget only
        std::vector<int> bag;       // sorted
        int parent = -1;
        std::vector<int> children;
    };
    std::vector<Node> nodes;
    int root = -1;
    int width = -1;

    /// Nodes in a bottom-up evaluation order (children before parents).
    std::vector<int> postorder() const;
};

/// Width-preserving conversion; rooted at bag 0 of the input. Node count is
/// O(width * nodes + n).
NiceDecomposition to_nice(const TreeDecomposition& td);

/// Structural check of nice-form invariants plus the underlying
/// decomposition conditions against g.
ValidationReport validate_nice(const Graph& g, const NiceDecomposition& nd);

/// Min-fill elimination ordering, ties broken by lowest vertex index. The
/// result always validates; its width is an upper bound on the treewidth.
TreeDecomposition heuristic_decomposition(const Graph& g);

/// Restriction of a decomposition of g to an induced vertex subset (local
/// indices per `verts`, which must be sorted).
TreeDecomposition restrict_decomposition(const TreeDecomposition& td,
                                         const std::vector<int>& verts);

} // namespace homtw

#endif

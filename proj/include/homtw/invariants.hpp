#ifndef HOMTW_INVARIANTS_HPP
#define HOMTW_INVARIANTS_HPP

#include "homtw/graph.hpp"

#include <chrono>
#include <optional>

namespace homtw {

struct GraphInvariants {
    int omega = 0;                 // clique number of the loop-stripped graph
    int chi = 0;                   // chromatic number of the loop-stripped graph
    std::optional<int> odd_girth;  // nullopt = infinity (bipartite); 1 with a loop
    bool bipartite = false;
    bool connected = false;
    bool ramified = false;
};

struct InvariantOptions {
    // Zero means unlimited. Exceeding the budget raises BudgetExceeded.
    std::chrono::milliseconds time_budget{0};
};

/// Exact structural invariants. omega by branch-and-bound clique search,
/// chi by DSATUR-ordered branch-and-bound with lowest-index tie-breaking,
/// odd girth by BFS layering from every start vertex, ramified by pairwise
/// open-neighborhood containment. Loops are ignored for omega and chi.
GraphInvariants invariants(const Graph& g, const InvariantOptions& opt = {});

/// Exact chromatic number of the loop-stripped graph.
int chromatic_number(const Graph& g, const InvariantOptions& opt = {});

/// Exact clique number of the loop-stripped graph.
int clique_number(const Graph& g, const InvariantOptions& opt = {});

/// Odd girth; nullopt means bipartite (no odd cycle), 1 means a loop.
std::optional<int> odd_girth(const Graph& g);

/// True when no vertex's open neighborhood contains another vertex's.
bool is_ramified(const Graph& g);

/// True when the graph has no 4-cycle (as a subgraph, loops ignored).
bool is_square_free(const Graph& g);

} // namespace homtw

#endif

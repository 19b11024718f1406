#ifndef HOMTW_HOM_HPP
#define HOMTW_HOM_HPP

#include "homtw/decomposition.hpp"
#include "homtw/graph.hpp"

#include <gmpxx.h>

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace homtw {

enum class HomMode { decide, find_one, enumerate, count };

struct SearchLimits {
    std::uint64_t max_nodes = 0;               // 0 = unlimited
    std::chrono::milliseconds time_budget{0};  // 0 = unlimited
    std::uint64_t enumeration_cap = 0;         // enumerate mode only; 0 = unlimited
};

/// Total edge-preserving vertex map, source index -> target index.
struct Homomorphism {
    std::vector<int> map;
};

/// Independent re-check of the homomorphism property (and pins/lists when
/// given). Used by tests and by every module that returns witnesses.
bool is_valid_hom(const Graph& g, const Graph& h, const std::vector<int>& map);

struct SearchStats {
    std::uint64_t nodes = 0;     // backtracking search nodes
    std::uint64_t dp_cells = 0;  // DP table cells across all bag tables
    int dp_base = 0;             // largest per-bag state-space base used
};

struct HomResult {
    bool decision = false;
    std::optional<Homomorphism> witness;
    std::optional<mpz_class> count;
    std::vector<Homomorphism> all;  // enumerate mode, lexicographic
    bool truncated = false;         // enumerate mode hit the cap
    SearchStats stats;
};

struct HomOptions {
    HomMode mode = HomMode::decide;
    std::vector<std::pair<int, int>> pins;                   // source -> target
    std::optional<std::vector<std::vector<int>>> lists;      // allowed targets per source vertex
    SearchLimits limits;
};

/// Exhaustive backtracking search with AC-3 domain propagation before each
/// branch. decide/find-one/count branch on the smallest domain (ties by
/// lowest index); enumerate assigns vertices in index order so results come
/// out lexicographic by (source vertex, target vertex). Counting is exact
/// over arbitrary-precision integers. Budget exhaustion raises
/// BudgetExceeded, never a "no".
HomResult hom_backtrack(const Graph& source, const Graph& target, const HomOptions& opt = {});

/// Enumeration variant with early exit: visit(map) returns false to stop.
/// Returns true when the enumeration was exhaustive.
bool hom_enumerate(const Graph& source, const Graph& target, const HomOptions& opt,
                   const std::function<bool(const std::vector<int>&)>& visit,
                   SearchStats* stats = nullptr);

struct DpLimits {
    std::uint64_t max_table_cells = std::uint64_t{1} << 26;
    std::chrono::milliseconds time_budget{0};
};

/// Treewidth dynamic programming over a nice decomposition of the source:
/// one table per bag indexed by assignments bag -> V(H), at most |H|^|bag|
/// states. Introduce filters on edges into the bag, forget projects
/// (summing counts), join intersects (multiplying counts). Modes: decide,
/// find_one (table traceback), count.
HomResult hom_dp(const Graph& g, const Graph& h, const NiceDecomposition& nd,
                 HomMode mode = HomMode::decide, const DpLimits& limits = {});

struct SolveTrace {
    struct Entry {
        std::string step;
        std::string detail;
        std::string verdict;
    };
    std::vector<Entry> entries;
    void note(std::string step, std::string detail, std::string verdict = "") {
        entries.push_back({std::move(step), std::move(detail), std::move(verdict)});
    }
};

struct SolveOptions {
    HomMode mode = HomMode::decide;
    bool factor_dispatch = true;
    std::optional<TreeDecomposition> decomposition;  // of the source graph
    SearchLimits limits;
    DpLimits dp;
    std::int64_t vertex_limit = kDefaultVertexLimit;
};

/// Full dispatch pipeline: trivial-target shortcuts (looped, edgeless or
/// bipartite targets), source split into connected components, component
/// dispatch for disconnected targets, prime-factor dispatch for connected
/// non-bipartite targets, and a treewidth DP per base query using the
/// supplied or a heuristic decomposition.
HomResult hom_solve(const Graph& g, const Graph& h, const SolveOptions& opt = {},
                    SolveTrace* trace = nullptr);

/// The set { y : some f : K -> H has f(x_i) = y_i for all pins and
/// f(x0) = y }, computed by enumerating feasible images of x0.
std::vector<int> constructible_set(const Graph& k, int x0,
                                   const std::vector<std::pair<int, int>>& pins, const Graph& h,
                                   const SearchLimits& limits = {});

} // namespace homtw

#endif

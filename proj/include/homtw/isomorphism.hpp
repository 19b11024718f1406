#ifndef HOMTW_ISOMORPHISM_HPP
#define HOMTW_ISOMORPHISM_HPP

#include "homtw/graph.hpp"

#include <chrono>
#include <optional>
#include <vector>

namespace homtw {

struct IsoOptions {
    std::chrono::milliseconds time_budget{0}; // 0 = unlimited
};

/// Edge- and non-edge-preserving bijection from a to b, or nullopt.
/// Backtracking over color-refinement classes with degree and
/// neighbor-degree-multiset pruning; deterministic given input order.
std::optional<std::vector<int>> isomorphic(const Graph& a, const Graph& b,
                                           const IsoOptions& opt = {});

} // namespace homtw

#endif

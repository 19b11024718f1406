#ifndef HOMTW_EXPERIMENTS_HPP
#define HOMTW_EXPERIMENTS_HPP

#include "homtw/cores.hpp"
#include "homtw/graph.hpp"
#include "homtw/report.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace homtw {

/// G(n, p) with optional loop probability; deterministic for a fixed rng state.
Graph random_graph(std::mt19937_64& rng, int n, double edge_prob, double loop_prob = 0.0);

struct OracleSweepResult {
    std::uint64_t instances = 0;
    std::uint64_t mismatches = 0;
    std::uint64_t backtrack_nodes = 0;
    std::uint64_t dp_cells = 0;
};

/// Brute-force-vs-DP equivalence: every connected labeled graph on at most
/// max_n vertices against each target, comparing decisions and exact counts.
OracleSweepResult oracle_sweep_exhaustive(int max_n, const std::vector<Graph>& targets);

/// Random (G, H) pairs with G up to max_gn and H up to max_hn vertices,
/// loops included on both sides with small probability.
OracleSweepResult oracle_sweep_random(int pairs, std::uint64_t seed, int max_gn, int max_hn);

struct ExperimentOptions {
    std::string tier = "quick"; // quick | full
    std::uint64_t seed = 1;
    int threads = 1;
    SearchLimits limits;
};

/// Core verification experiments on the named products (K3 x Grotzsch on the
/// quick tier; K3 x Chvatal and K3 x Brinkmann on the full tier).
RunReport experiment_paper_5_cores(const ExperimentOptions& opt);

/// Spot check of the product-of-incomparable-cores conjecture for the given
/// factor graphs: verifies each factor is a connected indecomposable core,
/// checks pairwise incomparability, then tests the product.
RunReport experiment_conjecture_18(const std::vector<Graph>& factors,
                                   const std::vector<std::string>& factor_names,
                                   const ExperimentOptions& opt);

/// The oracle equivalence sweep as a packaged experiment.
RunReport experiment_oracle_suite(const ExperimentOptions& opt);

} // namespace homtw

#endif

#ifndef HOMTW_CORES_HPP
#define HOMTW_CORES_HPP

#include "homtw/graph.hpp"
#include "homtw/hom.hpp"

#include <optional>
#include <vector>

namespace homtw {

struct CoreCertificate {
    enum class Verdict { is_core, not_core };
    Verdict verdict = Verdict::is_core;
    /// Endomorphism whose image misses at least one vertex; present iff
    /// not_core. Valid by construction and re-checkable via is_valid_hom.
    std::optional<Homomorphism> witness;
    /// Vertex avoided by the witness.
    int avoided_vertex = -1;
    /// Per excluded vertex, the node count of the failed search (is_core
    /// verdicts only); re-running any of them must fail again.
    std::vector<std::uint64_t> per_vertex_nodes;
    std::uint64_t total_nodes = 0;
};

struct CoreOptions {
    SearchLimits limits;
    int threads = 1; // per-excluded-vertex searches are independent
};

/// Core test by excluded-vertex searches: for every vertex v, search for an
/// endomorphism that maps nothing to v (list V\{v} on every source vertex).
/// is_core iff all |H| searches fail; otherwise the witness with the
/// smallest avoided vertex is reported. Budget exhaustion raises
/// BudgetExceeded ("inconclusive"), never a wrong verdict.
CoreCertificate is_core(const Graph& h, const CoreOptions& opt = {});

struct CoreResult {
    Graph core;
    /// Vertices of the original graph that form the core (sorted); core
    /// vertex i is original vertex core_vertices[i].
    std::vector<int> core_vertices;
    /// Retraction onto the core: original vertex -> core-local index.
    Homomorphism retraction;
};

/// Computes the core by greedily removing one vertex at a time (smallest
/// removable original index first) whenever a vertex-avoiding endomorphism
/// exists, composing the retraction along the way. Trivial cores (K1, K2,
/// looped vertex) short-circuit per their chromatic characterization.
CoreResult core_of(const Graph& g, const CoreOptions& opt = {});

struct EquivalenceResult {
    bool equivalent = false;
    std::optional<Homomorphism> a_to_b;
    std::optional<Homomorphism> b_to_a;
};

/// G ~ H iff homomorphisms exist in both directions; witnesses returned
/// when they do.
EquivalenceResult hom_equivalent(const Graph& a, const Graph& b, const SolveOptions& opt = {});

/// No homomorphism in either direction. The clique/chromatic/odd-girth
/// filters certify impossibility cheaply before any search runs; inputs
/// must be loopless for the filters to be sound.
bool incomparable(const Graph& a, const Graph& b, const SolveOptions& opt = {});

} // namespace homtw

#endif

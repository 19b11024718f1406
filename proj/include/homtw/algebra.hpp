#ifndef HOMTW_ALGEBRA_HPP
#define HOMTW_ALGEBRA_HPP

#include "homtw/graph.hpp"
#include "homtw/hom.hpp"

#include <optional>
#include <string>
#include <vector>

namespace homtw {

/// Prime factorization of a connected non-bipartite graph under the direct
/// product. coords maps every vertex of the factorized graph to its
/// coordinate tuple; tuple entry i is a vertex of factors[i].
struct Factorization {
    std::vector<Graph> factors;
    std::vector<std::vector<int>> coords;

    bool decomposable() const { return factors.size() >= 2; }
    /// Vertex whose coordinate tuple equals `tuple`.
    int vertex_of(const std::vector<int>& tuple) const;
};

struct FactorizeOptions {
    SearchLimits limits;
};

/// Unique prime factorization into directly indecomposable factors, found
/// by a backtracking product-labeling search over candidate factor size
/// pairs. K1* is the product unit and never appears as a factor.
/// Preconditions: connected, non-bipartite (odd cycle or loop), >= 2 vertices.
Factorization factorize_prime(const Graph& h, const FactorizeOptions& opt = {});

/// Materializes the product of `factors` and searches for an isomorphism
/// onto h. Runs independently of any coordinate data a factorization
/// carries. Throws PreconditionError when the sizes do not multiply to |h|.
std::optional<std::vector<int>> verify_factorization(const Graph& h,
                                                     const std::vector<Graph>& factors);

struct ProjectivityReport {
    enum class Verdict { projective, not_projective, inconclusive };
    Verdict verdict = Verdict::inconclusive;
    /// Idempotent homomorphism H^2 -> H (indexed over the materialized H^2)
    /// that is not a coordinate projection; present iff not_projective.
    std::optional<Homomorphism> witness;
    std::string detail;
};

struct ProjectivityOptions {
    /// Required-tier cap on |H|; H^2 has at most max_size^2 vertices.
    /// Larger graphs are allowed by raising this together with the budget.
    int max_size = 12;
    SearchLimits limits;
};

/// Enumerates every idempotent homomorphism H^2 -> H (diagonal pinned) and
/// reports projective iff each one is a coordinate projection. Budget or
/// size overrun yields inconclusive, never a wrong verdict.
/// Preconditions: connected, |H| >= 3.
ProjectivityReport is_projective(const Graph& h, const ProjectivityOptions& opt = {});

/// Re-checks a not-projective witness from scratch: edge preservation on
/// H^2, idempotence on the diagonal, disagreement with both projections.
bool validate_projectivity_witness(const Graph& h, const Homomorphism& f);

/// The mixed-coordinate map f((x,y),(x',y')) = (x,y') on H^2 for a
/// factorization with >= 2 factors; validated before it is returned.
Homomorphism decomposable_nonprojective_witness(const Graph& h, const Factorization& f);

struct TrulyProjectiveResult {
    bool ok = false;
    /// Homomorphism H^s x W -> H fixing f(x,...,x,y) = x that is not a
    /// projection onto an H coordinate; present iff !ok.
    std::optional<Homomorphism> witness;
};

struct TrulyProjectiveOptions {
    std::int64_t vertex_limit = kDefaultVertexLimit;
    SearchLimits limits;
};

/// Bounded check of the truly-projective condition for one fixed (W, s):
/// builds H^s x W, pins every vertex (x,...,x,y) to x and enumerates all
/// extensions; ok iff every extension is a projection onto one of the s
/// H coordinates. This checks a single instance of the universally
/// quantified definition, with the W class left to the caller.
/// Preconditions: s >= 2, |H| >= 3, H and W connected cores.
TrulyProjectiveResult truly_projective_check(const Graph& h, const Graph& w, int s,
                                             const TrulyProjectiveOptions& opt = {});

} // namespace homtw

#endif

#ifndef HOMTW_GADGETS_HPP
#define HOMTW_GADGETS_HPP

#include "homtw/algebra.hpp"
#include "homtw/cores.hpp"
#include "homtw/decomposition.hpp"
#include "homtw/graph.hpp"

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace homtw {

/// Edge gadget F with distinguished vertices u*, v*. The projective variant
/// is the power H^{k(k-1)} whose u*/v* tuples run through every ordered pair
/// of distinct vertices coordinate by coordinate; the non-projective variant
/// is H1^{2s} x R with one coordinate per orientation of every H1 edge plus
/// a fixed R coordinate. Gadgets materialize only under the vertex limit;
/// above it they stay symbolic with an adjacency oracle on tuples.
struct EdgeGadget {
    enum class Mode { materialized, symbolic };
    Mode mode = Mode::symbolic;
    bool projective_variant = true;

    Graph base;                          // H, or H1 for the non-projective variant
    std::optional<Graph> extra_factor;   // R (non-projective variant)
    int extra_w = -1;                    // the fixed vertex w of R

    int power_coords = 0;                // k(k-1), or 2s
    /// Coordinate tuples of u* and v*; the non-projective variant carries the
    /// trailing R coordinate (both equal to w), so its tuples have 2s+1 entries.
    std::vector<int> u_star_tuple, v_star_tuple;

    std::optional<Graph> f;              // materialized gadget graph
    std::int64_t u_star_index = -1, v_star_index = -1;

    /// |V(F)| (may be astronomically large in symbolic mode).
    mpz_class vertex_count() const;
    /// Factor list whose direct product is F.
    std::vector<Graph> product_parts() const;
    /// Adjacency oracle on coordinate tuples: adjacent iff adjacent in every
    /// coordinate. Works in both modes.
    bool tuples_adjacent(const std::vector<int>& t1, const std::vector<int>& t2) const;
    /// Target graph of gadget homomorphisms: base itself, or base x R.
    Graph target() const;
};

/// u* = (z1^{k-1},...,zk^{k-1}), v* = (z1-bar,...,zk-bar) with the omitted
/// lists in ascending vertex order. The caller asserts that h is a
/// non-trivial projective core. Falls back to symbolic above the limit.
EdgeGadget build_projective_gadget(const Graph& h,
                                   std::int64_t vertex_limit = kDefaultVertexLimit);

/// u = (u1..us, v1..vs), v = (v1..vs, u1..us) over the lexicographic edge
/// list of h1; u* = (u,w), v* = (v,w). The caller asserts h1 is a
/// truly-projective candidate and h1 x r a connected core.
EdgeGadget build_nonprojective_gadget(const Graph& h1, const Graph& r, int w,
                                      std::int64_t vertex_limit = kDefaultVertexLimit);

struct GadgetCertificate {
    // property (a): every required pair carries a projection witness
    bool pair_table_ok = false;
    int pairs_checked = 0;
    int pairs_total = 0;
    // per-coordinate table: distinctness (projective) or H1-edge membership
    // plus the fixed w coordinate (non-projective)
    bool coords_ok = false;
    // compositional ingredients for property (b)
    std::optional<ProjectivityReport::Verdict> projectivity;
    std::optional<CoreCertificate::Verdict> core;
    // pinned-equal searches u*,v* -> z, all refuted; run when materialized
    // and small enough
    std::optional<bool> direct_b_ok;
    /// No sub-verdict missing or inconclusive; (b) then holds compositionally.
    bool unconditional = false;
    std::string detail;
};

struct VerifyGadgetOptions {
    /// Direct property-(b) refutation searches run when the materialized
    /// gadget has at most this many vertices.
    std::int64_t direct_check_limit = 1000;
    /// Edge samples per projection witness for symbolic gadgets.
    int symbolic_edge_samples = 64;
    SearchLimits limits;
    ProjectivityOptions projectivity;
};

GadgetCertificate verify_gadget(const EdgeGadget& g, const VerifyGadgetOptions& opt = {});

struct ReductionResult {
    Graph g_star;
    /// original vertex -> vertex of g_star (identity block at the front)
    std::vector<int> original_vertex;
    std::optional<TreeDecomposition> extended;
    EdgeGadget gadget;
};

/// Instance transformation: one vertex per V(G) plus, per edge xy, a fresh
/// gadget copy whose u*/v* are identified with x and y. When a decomposition
/// of G is supplied, each edge's gadget bag X_b + V(F_xy) is inserted next to
/// a bag X_b containing both endpoints; the result validates with width at
/// most width(D) + |F|.
ReductionResult reduce_kcoloring(const Graph& g, const Graph& h,
                                 const std::optional<TreeDecomposition>& d = std::nullopt,
                                 std::int64_t vertex_limit = kDefaultVertexLimit);

/// Decides G* -> H through the certificate alone: colors on original
/// vertices, edges allowed exactly when the ordered color pair is witnessed
/// by property (a) (monochromatic pairs are excluded by property (b)).
bool certificate_reduction_decision(const Graph& g, const EdgeGadget& gadget);

} // namespace homtw

#endif

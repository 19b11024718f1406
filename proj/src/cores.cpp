#include "homtw/cores.hpp"

#include "homtw/errors.hpp"
#include "homtw/invariants.hpp"

#include <algorithm>
#include <atomic>
#include <future>

namespace homtw {

namespace {

// Search an endomorphism of h that avoids `avoid`: every vertex gets the
// list V(h) \ {avoid}.
HomResult avoid_search(const Graph& h, int avoid, const SearchLimits& limits) {
    std::vector<int> allowed;
    allowed.reserve(h.size() - 1);
    for (int v = 0; v < h.size(); ++v)
        if (v != avoid) allowed.push_back(v);
    HomOptions opt;
    opt.mode = HomMode::find_one;
    opt.lists = std::vector<std::vector<int>>(h.size(), allowed);
    opt.limits = limits;
    return hom_backtrack(h, h, opt);
}

} // namespace

CoreCertificate is_core(const Graph& h, const CoreOptions& opt) {
    CoreCertificate cert;
    cert.per_vertex_nodes.assign(h.size(), 0);
    if (h.size() <= 1) {
        cert.verdict = CoreCertificate::Verdict::is_core;
        return cert;
    }

    const int threads = std::max(1, opt.threads);
    if (threads == 1) {
        for (int v = 0; v < h.size(); ++v) {
            HomResult r = avoid_search(h, v, opt.limits);
            cert.per_vertex_nodes[v] = r.stats.nodes;
            cert.total_nodes += r.stats.nodes;
            if (r.decision) {
                cert.verdict = CoreCertificate::Verdict::not_core;
                cert.witness = r.witness;
                cert.avoided_vertex = v;
                return cert;
            }
        }
        cert.verdict = CoreCertificate::Verdict::is_core;
        return cert;
    }

    // Parallel tier: run everything, then report the smallest avoided vertex
    // so the verdict and witness match the sequential path.
    std::vector<HomResult> results(h.size());
    std::vector<std::exception_ptr> errors(h.size());
    {
        std::vector<std::future<void>> pool;
        std::atomic<int> next{0};
        for (int t = 0; t < threads; ++t)
            pool.push_back(std::async(std::launch::async, [&] {
                while (true) {
                    int v = next.fetch_add(1);
                    if (v >= h.size()) return;
                    try {
                        results[v] = avoid_search(h, v, opt.limits);
                    } catch (...) {
                        errors[v] = std::current_exception();
                    }
                }
            }));
        for (auto& f : pool) f.get();
    }
    for (int v = 0; v < h.size(); ++v) {
        if (errors[v]) std::rethrow_exception(errors[v]);
        cert.per_vertex_nodes[v] = results[v].stats.nodes;
        cert.total_nodes += results[v].stats.nodes;
    }
    for (int v = 0; v < h.size(); ++v) {
        if (results[v].decision) {
            cert.verdict = CoreCertificate::Verdict::not_core;
            cert.witness = results[v].witness;
            cert.avoided_vertex = v;
            return cert;
        }
    }
    cert.verdict = CoreCertificate::Verdict::is_core;
    return cert;
}

CoreResult core_of(const Graph& g, const CoreOptions& opt) {
    CoreResult out;
    const int n = g.size();
    if (n == 0) {
        out.retraction.map = {};
        return out;
    }

    // Trivial cores first (looped vertex, edgeless, bipartite).
    for (int v = 0; v < n; ++v) {
        if (g.has_loop(v)) {
            out.core_vertices = {v};
            out.core = induced_subgraph(g, out.core_vertices);
            out.retraction.map.assign(n, 0);
            return out;
        }
    }
    if (g.edge_count() == 0) {
        out.core_vertices = {0};
        out.core = induced_subgraph(g, out.core_vertices);
        out.retraction.map.assign(n, 0);
        return out;
    }
    if (auto bip = bipartition(g)) {
        auto es = g.edges();
        auto [eu, ev] = es.front();
        // orient the 2-coloring so each component lands on the chosen edge
        out.core_vertices = {eu, ev};
        std::sort(out.core_vertices.begin(), out.core_vertices.end());
        out.core = induced_subgraph(g, out.core_vertices);
        int lo_side = (*bip)[out.core_vertices[0]];
        out.retraction.map.assign(n, -1);
        for (int v = 0; v < n; ++v)
            out.retraction.map[v] = ((*bip)[v] == lo_side) ? 0 : 1;
        return out;
    }

    // Greedy removal: smallest removable original index first.
    std::vector<int> verts(n);
    for (int i = 0; i < n; ++i) verts[i] = i;
    std::vector<int> to_local(n);
    for (int i = 0; i < n; ++i) to_local[i] = i; // original -> current local index
    Graph cur = g;
    bool shrunk = true;
    while (shrunk) {
        shrunk = false;
        for (std::size_t li = 0; li < verts.size(); ++li) {
            HomResult r = avoid_search(cur, static_cast<int>(li), opt.limits);
            if (!r.decision) continue;
            // compose, then drop the avoided vertex
            const auto& f = r.witness->map;
            std::vector<int> nverts;
            std::vector<int> relabel(verts.size(), -1); // old local -> new local
            for (std::size_t i = 0; i < verts.size(); ++i) {
                if (i == li) continue;
                relabel[i] = static_cast<int>(nverts.size());
                nverts.push_back(verts[i]);
            }
            for (int v = 0; v < n; ++v)
                to_local[v] = relabel[f[to_local[v]]];
            verts = std::move(nverts);
            cur = induced_subgraph(g, verts);
            shrunk = true;
            break;
        }
    }
    out.core = cur;
    out.core_vertices = verts;
    out.retraction.map = to_local;
    return out;
}

EquivalenceResult hom_equivalent(const Graph& a, const Graph& b, const SolveOptions& opt) {
    SolveOptions o = opt;
    o.mode = HomMode::find_one;
    EquivalenceResult res;
    HomResult ab = hom_solve(a, b, o);
    HomResult ba = hom_solve(b, a, o);
    res.equivalent = ab.decision && ba.decision;
    if (ab.decision) res.a_to_b = ab.witness;
    if (ba.decision) res.b_to_a = ba.witness;
    return res;
}

namespace {

// Obs-2 style certificates: a hom can only exist when omega and chi do not
// drop and the odd girth does not rise, so a violated inequality rules the
// direction out without a search.
bool filters_rule_out(const GraphInvariants& from, const GraphInvariants& to) {
    if (from.omega > to.omega) return true;
    if (from.chi > to.chi) return true;
    int og_from = from.odd_girth.value_or(1 << 30);
    int og_to = to.odd_girth.value_or(1 << 30);
    return og_from < og_to;
}

} // namespace

bool incomparable(const Graph& a, const Graph& b, const SolveOptions& opt) {
    if (a.has_any_loop() || b.has_any_loop())
        throw PreconditionError("incomparable requires loopless inputs");
    GraphInvariants ia = invariants(a);
    GraphInvariants ib = invariants(b);
    bool ab_ruled_out = filters_rule_out(ia, ib);
    bool ba_ruled_out = filters_rule_out(ib, ia);
    if (ab_ruled_out && ba_ruled_out) return true;
    SolveOptions o = opt;
    o.mode = HomMode::decide;
    if (!ab_ruled_out && hom_solve(a, b, o).decision) return false;
    if (!ba_ruled_out && hom_solve(b, a, o).decision) return false;
    return true;
}

} // namespace homtw

#include "homtw/hom.hpp"

#include "homtw/algebra.hpp"
#include "homtw/errors.hpp"

#include <algorithm>
#include <sstream>

namespace homtw {

namespace {

std::string fmt_graph(const Graph& g) {
    return "n=" + std::to_string(g.size()) + " m=" + std::to_string(g.edge_count());
}

// Lexicographically smallest edge of h, loops excluded.
std::pair<int, int> smallest_proper_edge(const Graph& h) {
    for (auto [u, v] : h.edges())
        if (u != v) return {u, v};
    throw Error("internal: no proper edge");
}

struct BaseQueryContext {
    const SolveOptions& opt;
    SolveTrace* trace;
    SearchStats* stats;
};

// One DP run of component `g_local` against connected target `target`.
HomResult base_query(const Graph& g_local, const Graph& target,
                     const std::optional<TreeDecomposition>& td_local,
                     const BaseQueryContext& ctx) {
    TreeDecomposition td = td_local ? *td_local : heuristic_decomposition(g_local);
    NiceDecomposition nd = to_nice(td);
    HomMode mode = ctx.opt.mode == HomMode::enumerate ? HomMode::decide : ctx.opt.mode;
    HomResult r = hom_dp(g_local, target, nd, mode, ctx.opt.dp);
    ctx.stats->dp_cells += r.stats.dp_cells;
    ctx.stats->dp_base = std::max(ctx.stats->dp_base, r.stats.dp_base);
    if (ctx.trace)
        ctx.trace->note("dp",
                        "base=" + std::to_string(target.size()) + " width=" +
                            std::to_string(td.width()) + " cells=" + std::to_string(r.stats.dp_cells),
                        r.decision ? "yes" : "no");
    return r;
}

// Connected source against connected target, with optional prime-factor
// dispatch (Obs 5(e): G -> H1 x ... x Hm iff G -> Hi for all i).
HomResult solve_conn_conn(const Graph& g_local, const Graph& target,
                          const std::optional<TreeDecomposition>& td_local,
                          const BaseQueryContext& ctx) {
    bool try_factor = ctx.opt.factor_dispatch && target.size() >= 2 && !target.has_any_loop() &&
                      !bipartition(target).has_value();
    if (try_factor) {
        Factorization f;
        try {
            FactorizeOptions fo;
            fo.limits = ctx.opt.limits;
            f = factorize_prime(target, fo);
        } catch (const BudgetExceeded&) {
            try_factor = false;
        }
        if (try_factor && f.decomposable()) {
            if (ctx.trace) {
                std::string sizes;
                for (const auto& fac : f.factors)
                    sizes += (sizes.empty() ? "" : ",") + std::to_string(fac.size());
                ctx.trace->note("factor-dispatch", "prime factors sizes=[" + sizes + "]");
            }
            HomResult combined;
            combined.decision = true;
            if (ctx.opt.mode == HomMode::count) combined.count = 1;
            std::vector<std::vector<int>> factor_maps;
            for (std::size_t i = 0; i < f.factors.size(); ++i) {
                HomResult r = base_query(g_local, f.factors[i], td_local, ctx);
                if (ctx.trace)
                    ctx.trace->note("factor[" + std::to_string(i) + "]", fmt_graph(f.factors[i]),
                                    r.decision ? "yes" : "no");
                if (ctx.opt.mode == HomMode::count) {
                    *combined.count *= *r.count;
                    combined.decision = combined.decision && r.decision;
                    if (!combined.decision) {
                        combined.count = 0;
                        return combined;
                    }
                } else {
                    if (!r.decision) {
                        combined.decision = false;
                        return combined;
                    }
                    if (ctx.opt.mode == HomMode::find_one)
                        factor_maps.push_back(r.witness->map);
                }
            }
            if (ctx.opt.mode == HomMode::find_one) {
                // stitch per-factor images back through the coordinate tuples
                std::vector<int> map(g_local.size());
                std::vector<int> tuple(f.factors.size());
                for (int v = 0; v < g_local.size(); ++v) {
                    for (std::size_t i = 0; i < f.factors.size(); ++i)
                        tuple[i] = factor_maps[i][v];
                    map[v] = f.vertex_of(tuple);
                }
                combined.witness = Homomorphism{std::move(map)};
            }
            return combined;
        }
    }
    return base_query(g_local, target, td_local, ctx);
}

// Connected source against arbitrary target: disconnected targets go
// component by component (a connected graph maps into a single component).
HomResult solve_connected_source(const Graph& g_local, const Graph& h,
                                 const std::optional<TreeDecomposition>& td_local,
                                 const BaseQueryContext& ctx) {
    auto h_comps = connected_components(h);
    if (h_comps.size() == 1)
        return solve_conn_conn(g_local, h, td_local, ctx);
    if (ctx.trace)
        ctx.trace->note("component-dispatch",
                        "target has " + std::to_string(h_comps.size()) + " components");
    HomResult out;
    if (ctx.opt.mode == HomMode::count) out.count = 0;
    for (std::size_t ci = 0; ci < h_comps.size(); ++ci) {
        Graph hc = induced_subgraph(h, h_comps[ci]);
        HomResult r = solve_conn_conn(g_local, hc, td_local, ctx);
        if (ctx.trace)
            ctx.trace->note("target-component[" + std::to_string(ci) + "]", fmt_graph(hc),
                            r.decision ? "yes" : "no");
        if (ctx.opt.mode == HomMode::count) {
            *out.count += *r.count;
        } else if (r.decision) {
            out.decision = true;
            if (ctx.opt.mode == HomMode::find_one) {
                std::vector<int> map = r.witness->map;
                for (auto& x : map) x = h_comps[ci][x];
                out.witness = Homomorphism{std::move(map)};
            }
            return out;
        }
    }
    if (ctx.opt.mode == HomMode::count) out.decision = *out.count > 0;
    return out;
}

} // namespace

HomResult hom_solve(const Graph& g, const Graph& h, const SolveOptions& opt, SolveTrace* trace) {
    HomResult out;
    if (opt.mode == HomMode::enumerate) {
        // enumeration needs explicit maps into h itself; dispatching through
        // factors or components would only complicate reassembly
        if (trace) trace->note("backtrack-enumerate", "direct exhaustive enumeration");
        HomOptions ho;
        ho.mode = HomMode::enumerate;
        ho.limits = opt.limits;
        return hom_backtrack(g, h, ho);
    }

    if (g.size() == 0) {
        out.decision = true;
        if (opt.mode == HomMode::count) out.count = 1;
        if (opt.mode == HomMode::find_one) out.witness = Homomorphism{{}};
        if (trace) trace->note("trivial", "empty source", "yes");
        return out;
    }
    if (h.size() == 0) {
        out.decision = false;
        if (opt.mode == HomMode::count) out.count = 0;
        if (trace) trace->note("trivial", "empty target", "no");
        return out;
    }

    // Trivial-target shortcuts (decide/find only; counting needs the DP).
    if (opt.mode != HomMode::count) {
        if (h.has_any_loop()) {
            int w = 0;
            while (!h.has_loop(w)) ++w;
            out.decision = true;
            if (opt.mode == HomMode::find_one)
                out.witness = Homomorphism{std::vector<int>(g.size(), w)};
            if (trace) trace->note("trivial-target", "target has a loop", "yes");
            return out;
        }
        if (h.edge_count() == 0) {
            out.decision = g.edge_count() == 0;
            if (out.decision && opt.mode == HomMode::find_one)
                out.witness = Homomorphism{std::vector<int>(g.size(), 0)};
            if (trace)
                trace->note("trivial-target", "edgeless target needs an edgeless source",
                            out.decision ? "yes" : "no");
            return out;
        }
        if (auto hbip = bipartition(h)) {
            auto gbip = bipartition(g);
            out.decision = gbip.has_value();
            if (out.decision && opt.mode == HomMode::find_one) {
                auto [eu, ev] = smallest_proper_edge(h);
                std::vector<int> map(g.size());
                for (int v = 0; v < g.size(); ++v) map[v] = (*gbip)[v] == 0 ? eu : ev;
                out.witness = Homomorphism{std::move(map)};
            }
            if (trace)
                trace->note("trivial-target", "bipartite target: source 2-colorability",
                            out.decision ? "yes" : "no");
            return out;
        }
    }

    // Split the source into connected components; all must embed.
    auto g_comps = connected_components(g);
    BaseQueryContext ctx{opt, trace, &out.stats};
    if (trace && g_comps.size() > 1)
        trace->note("source-split", std::to_string(g_comps.size()) + " source components");
    out.decision = true;
    if (opt.mode == HomMode::count) out.count = 1;
    std::vector<int> full_map(g.size(), -1);
    for (std::size_t gi = 0; gi < g_comps.size(); ++gi) {
        Graph gc = induced_subgraph(g, g_comps[gi]);
        std::optional<TreeDecomposition> td_local;
        if (opt.decomposition) td_local = restrict_decomposition(*opt.decomposition, g_comps[gi]);
        HomResult r = solve_connected_source(gc, h, td_local, ctx);
        if (opt.mode == HomMode::count) {
            *out.count *= *r.count;
            if (*out.count == 0) {
                out.decision = false;
                return out;
            }
        } else {
            if (!r.decision) {
                out.decision = false;
                if (trace)
                    trace->note("source-component[" + std::to_string(gi) + "]", fmt_graph(gc), "no");
                return out;
            }
            if (opt.mode == HomMode::find_one)
                for (std::size_t i = 0; i < g_comps[gi].size(); ++i)
                    full_map[g_comps[gi][i]] = r.witness->map[i];
        }
    }
    if (opt.mode == HomMode::count) {
        out.decision = *out.count > 0;
    } else if (opt.mode == HomMode::find_one) {
        out.witness = Homomorphism{std::move(full_map)};
    }
    return out;
}

} // namespace homtw

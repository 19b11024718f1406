#include "homtw/cli.hpp"

#include "homtw/algebra.hpp"
#include "homtw/cores.hpp"
#include "homtw/errors.hpp"
#include "homtw/experiments.hpp"
#include "homtw/gadgets.hpp"
#include "homtw/graph_spec.hpp"
#include "homtw/invariants.hpp"
#include "homtw/pace_io.hpp"
#include "homtw/report.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

namespace homtw {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInconclusive = 2;

struct GlobalOpts {
    bool json = false;
    bool timing = false;
    std::uint64_t seed = 1;
    int threads = 1;
    std::uint64_t budget_nodes = 0;
    std::uint64_t budget_ms = 0;
    std::int64_t vertex_limit = kDefaultVertexLimit;
    std::uint64_t table_cells = std::uint64_t{1} << 26;

    SearchLimits limits() const {
        SearchLimits l;
        l.max_nodes = budget_nodes;
        l.time_budget = std::chrono::milliseconds(budget_ms);
        return l;
    }
};

std::string join_args(const std::vector<std::string>& args) {
    std::string s;
    for (const auto& a : args) {
        if (!s.empty()) s += " ";
        s += a;
    }
    return s;
}

void describe_graph(RunReport& rep, const std::string& key, const Graph& g) {
    rep.add(key, "n=" + std::to_string(g.size()) + " m=" + std::to_string(g.edge_count()) +
                     " digest=" + graph_digest(g));
}

std::string witness_string(const Homomorphism& w) {
    std::string s;
    for (std::size_t i = 0; i < w.map.size(); ++i) {
        if (i) s += " ";
        s += std::to_string(w.map[i]);
    }
    return s;
}

void add_trace(RunReport& rep, const SolveTrace& trace) {
    for (const auto& e : trace.entries)
        rep.add("path." + e.step, e.detail + (e.verdict.empty() ? "" : " -> " + e.verdict));
}

void emit(const RunReport& rep, const GlobalOpts& g, std::ostream& out) {
    out << (g.json ? rep.to_json() : rep.to_text());
}

std::uint64_t table_cells_from_env(std::uint64_t fallback) {
    if (const char* mb = std::getenv("HOMTW_MEM_LIMIT_MB")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(mb, &end, 10);
        if (end && *end == '\0' && v > 0)
            return static_cast<std::uint64_t>(v) * 125000; // 8 bytes per cell
    }
    return fallback;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"graph homomorphisms parameterized by treewidth"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_flag("--json", g.json, "emit the report as JSON");
    app.add_flag("--timing", g.timing, "include wall-clock timing in the report");
    app.add_option("--seed", g.seed, "seed for randomized experiments");
    app.add_option("--threads", g.threads, "solver parallelism (independent subsearches only)");
    app.add_option("--budget", g.budget_nodes, "search node budget (0 = unlimited)");
    app.add_option("--budget-ms", g.budget_ms, "search time budget in ms (0 = unlimited)");
    app.add_option("--vertex-limit", g.vertex_limit, "hard cap on materialized graph sizes");
    app.add_option("--table-cells", g.table_cells, "DP table cell cap per bag table");

    // solve
    auto* solve = app.add_subcommand("solve", "decide / count / find G -> H");
    std::string solve_src, solve_tgt, solve_td, solve_mode = "decide";
    bool no_factor = false;
    solve->add_option("source", solve_src)->required();
    solve->add_option("target", solve_tgt)->required();
    solve->add_option("--td", solve_td, "PACE .td decomposition of the source");
    solve->add_option("--mode", solve_mode)->check(CLI::IsMember({"decide", "count", "find"}));
    solve->add_flag("--no-factor-dispatch", no_factor, "run the DP on the target as a whole");

    // core
    auto* core_cmd = app.add_subcommand("core", "core test and core computation");
    std::string core_spec;
    core_cmd->add_option("graph", core_spec)->required();

    // projective
    auto* proj = app.add_subcommand("projective", "projectivity via H^2 enumeration");
    std::string proj_spec;
    int proj_max_size = 12;
    proj->add_option("graph", proj_spec)->required();
    proj->add_option("--max-size", proj_max_size, "enumeration size cap on |H|");

    // factor
    auto* factor = app.add_subcommand("factor", "prime factorization under the direct product");
    std::string factor_spec;
    factor->add_option("graph", factor_spec)->required();

    // gadget
    auto* gadget = app.add_subcommand("gadget", "edge gadget construction and verification");
    std::string gadget_tgt, gadget_out, gadget_r;
    int gadget_w = 0;
    gadget->add_option("target", gadget_tgt)->required();
    gadget->add_option("--nonprojective-r", gadget_r,
                       "build the non-projective variant with this extra factor R");
    gadget->add_option("--w", gadget_w, "fixed vertex of R (non-projective variant)");
    gadget->add_option("--out", gadget_out, "write the materialized gadget as DIMACS");

    // reduce
    auto* reduce = app.add_subcommand("reduce", "k-coloring style instance transformation");
    std::string red_src, red_tgt, red_td_in, red_td_out, red_out, red_map_out;
    reduce->add_option("source", red_src)->required();
    reduce->add_option("target", red_tgt)->required();
    reduce->add_option("--td-in", red_td_in, "decomposition of the source");
    reduce->add_option("--td-out", red_td_out, "write the extended decomposition");
    reduce->add_option("--out", red_out, "write G* as DIMACS");
    reduce->add_option("--map-out", red_map_out, "write original-vertex map, one line each");

    // experiment
    auto* exp = app.add_subcommand("experiment", "reproducible experiment runner");
    std::string exp_name, exp_tier = "quick", exp_with = "clique:3,grotzsch";
    exp->add_option("name", exp_name)->required()->check(
        CLI::IsMember({"paper-5-cores", "conjecture-18", "oracle-suite"}));
    exp->add_option("--tier", exp_tier)->check(CLI::IsMember({"quick", "full"}));
    exp->add_option("--with", exp_with, "conjecture-18 factor list (comma separated specs)");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        std::ostringstream msg;
        int code = app.exit(e, msg, msg);
        err << msg.str();
        return code == 0 ? kExitOk : kExitError;
    }
    g.table_cells = table_cells_from_env(g.table_cells);

    RunReport rep;
    rep.add("command", join_args(args));
    auto t0 = std::chrono::steady_clock::now();
    auto finish = [&](int code) {
        if (g.timing) {
            auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
            rep.add("wall_ms", static_cast<long long>(ms));
        }
        emit(rep, g, out);
        return code;
    };

    try {
        if (*solve) {
            Graph src = parse_graph_spec(solve_src, g.vertex_limit);
            Graph tgt = parse_graph_spec(solve_tgt, g.vertex_limit);
            describe_graph(rep, "source", src);
            describe_graph(rep, "target", tgt);
            SolveOptions so;
            so.mode = solve_mode == "count" ? HomMode::count
                      : solve_mode == "find" ? HomMode::find_one
                                             : HomMode::decide;
            so.factor_dispatch = !no_factor;
            so.limits = g.limits();
            so.dp.max_table_cells = g.table_cells;
            so.dp.time_budget = g.limits().time_budget;
            so.vertex_limit = g.vertex_limit;
            if (!solve_td.empty()) {
                TreeDecomposition td = load_td(solve_td);
                if (auto rv = validate(src, td); !rv.ok) {
                    rep.add("error", "invalid decomposition [" + rv.condition + ": " + rv.detail + "]");
                    finish(kExitError);
                    return kExitError;
                }
                so.decomposition = td;
                rep.add("decomposition", "width=" + std::to_string(td.width()));
            }
            SolveTrace trace;
            HomResult r = hom_solve(src, tgt, so, &trace);
            add_trace(rep, trace);
            rep.add("verdict", r.decision ? "yes" : "no");
            if (r.count) rep.add("count", r.count->get_str());
            if (r.witness) {
                if (!is_valid_hom(src, tgt, r.witness->map))
                    throw Error("internal: witness failed revalidation");
                rep.add("witness", witness_string(*r.witness));
            }
            rep.add("stats.nodes", static_cast<long long>(r.stats.nodes));
            rep.add("stats.dp_cells", static_cast<long long>(r.stats.dp_cells));
            rep.add("stats.dp_base", r.stats.dp_base);
            return finish(kExitOk);
        }

        if (*core_cmd) {
            Graph h = parse_graph_spec(core_spec, g.vertex_limit);
            describe_graph(rep, "graph", h);
            CoreOptions co;
            co.limits = g.limits();
            co.threads = g.threads;
            CoreCertificate cert = is_core(h, co);
            bool core = cert.verdict == CoreCertificate::Verdict::is_core;
            rep.add("verdict", core ? "is-core" : "not-core");
            rep.add("stats.nodes", static_cast<long long>(cert.total_nodes));
            if (!core) {
                rep.add("avoided-vertex", cert.avoided_vertex);
                rep.add("witness", witness_string(*cert.witness));
                CoreResult cr = core_of(h, co);
                describe_graph(rep, "core", cr.core);
                std::string verts;
                for (int v : cr.core_vertices) verts += (verts.empty() ? "" : " ") + std::to_string(v);
                rep.add("core-vertices", verts);
                rep.add("retraction", witness_string(cr.retraction));
            }
            return finish(kExitOk);
        }

        if (*proj) {
            Graph h = parse_graph_spec(proj_spec, g.vertex_limit);
            describe_graph(rep, "graph", h);
            ProjectivityOptions po;
            po.max_size = proj_max_size;
            po.limits = g.limits();
            ProjectivityReport r = is_projective(h, po);
            switch (r.verdict) {
            case ProjectivityReport::Verdict::projective:
                rep.add("verdict", "projective");
                break;
            case ProjectivityReport::Verdict::not_projective:
                rep.add("verdict", "not-projective");
                break;
            case ProjectivityReport::Verdict::inconclusive:
                rep.add("verdict", "inconclusive");
                rep.add("detail", r.detail);
                finish(kExitInconclusive);
                return kExitInconclusive;
            }
            if (r.witness) {
                if (!validate_projectivity_witness(h, *r.witness))
                    throw Error("internal: projectivity witness failed revalidation");
                rep.add("witness", witness_string(*r.witness));
            }
            rep.add("detail", r.detail);
            return finish(kExitOk);
        }

        if (*factor) {
            Graph h = parse_graph_spec(factor_spec, g.vertex_limit);
            describe_graph(rep, "graph", h);
            FactorizeOptions fo;
            fo.limits = g.limits();
            Factorization f = factorize_prime(h, fo);
            rep.add("factors", static_cast<long long>(f.factors.size()));
            for (std::size_t i = 0; i < f.factors.size(); ++i)
                describe_graph(rep, "factor[" + std::to_string(i) + "]", f.factors[i]);
            if (!verify_factorization(h, f.factors))
                throw Error("internal: factorization failed the isomorphism re-check");
            rep.add("verified", "product isomorphic to input");
            return finish(kExitOk);
        }

        if (*gadget) {
            Graph tgt = parse_graph_spec(gadget_tgt, g.vertex_limit);
            describe_graph(rep, "target", tgt);
            EdgeGadget eg;
            if (gadget_r.empty()) {
                eg = build_projective_gadget(tgt, g.vertex_limit);
            } else {
                Graph r = parse_graph_spec(gadget_r, g.vertex_limit);
                describe_graph(rep, "extra-factor", r);
                eg = build_nonprojective_gadget(tgt, r, gadget_w, g.vertex_limit);
            }
            rep.add("variant", eg.projective_variant ? "projective" : "non-projective");
            rep.add("mode", eg.mode == EdgeGadget::Mode::materialized ? "materialized" : "symbolic");
            rep.add("coords", eg.power_coords);
            rep.add("gadget-size", eg.vertex_count().get_str());
            std::string us, vs;
            for (int x : eg.u_star_tuple) us += (us.empty() ? "" : " ") + std::to_string(x);
            for (int x : eg.v_star_tuple) vs += (vs.empty() ? "" : " ") + std::to_string(x);
            rep.add("u-star", us);
            rep.add("v-star", vs);
            VerifyGadgetOptions vo;
            vo.limits = g.limits();
            GadgetCertificate cert = verify_gadget(eg, vo);
            rep.add("pairs", std::to_string(cert.pairs_checked) + "/" + std::to_string(cert.pairs_total));
            rep.add("coords-table", cert.coords_ok ? "ok" : "FAILED");
            if (cert.projectivity)
                rep.add("projective",
                        *cert.projectivity == ProjectivityReport::Verdict::projective ? "yes"
                        : *cert.projectivity == ProjectivityReport::Verdict::not_projective
                            ? "no"
                            : "inconclusive");
            if (cert.core)
                rep.add("core", *cert.core == CoreCertificate::Verdict::is_core ? "yes" : "no");
            if (cert.direct_b_ok) rep.add("direct-b", *cert.direct_b_ok ? "ok" : "FAILED");
            rep.add("certificate", cert.unconditional ? "unconditional" : "conditional");
            if (!gadget_out.empty()) {
                if (eg.mode != EdgeGadget::Mode::materialized)
                    throw LimitExceeded("symbolic gadget cannot be written as a graph file");
                std::ofstream f(gadget_out);
                if (!f) throw ParseError("cannot write '" + gadget_out + "'");
                f << "c edge gadget, u*=" << eg.u_star_index + 1 << " v*=" << eg.v_star_index + 1
                  << " (1-based)\n";
                emit_dimacs(*eg.f, f);
                rep.add("out", gadget_out);
            }
            return finish(kExitOk);
        }

        if (*reduce) {
            Graph src = parse_graph_spec(red_src, g.vertex_limit);
            Graph tgt = parse_graph_spec(red_tgt, g.vertex_limit);
            describe_graph(rep, "source", src);
            describe_graph(rep, "target", tgt);
            std::optional<TreeDecomposition> td;
            if (!red_td_in.empty()) {
                td = load_td(red_td_in);
                if (auto rv = validate(src, *td); !rv.ok) {
                    rep.add("error", "invalid decomposition [" + rv.condition + ": " + rv.detail + "]");
                    finish(kExitError);
                    return kExitError;
                }
            }
            ReductionResult r = reduce_kcoloring(src, tgt, td, g.vertex_limit);
            describe_graph(rep, "g-star", r.g_star);
            rep.add("gadget-size", static_cast<long long>(r.gadget.f->size()));
            if (r.extended) {
                rep.add("extended-width", r.extended->width());
                if (auto rv = validate(r.g_star, *r.extended); !rv.ok)
                    throw Error("internal: extended decomposition failed validation [" +
                                rv.condition + "]");
                rep.add("extended-valid", "yes");
                if (!red_td_out.empty()) {
                    save_td(*r.extended, r.g_star.size(), red_td_out);
                    rep.add("td-out", red_td_out);
                }
            }
            if (!red_out.empty()) {
                save_graph_dimacs(r.g_star, red_out);
                rep.add("out", red_out);
            }
            if (!red_map_out.empty()) {
                std::ofstream f(red_map_out);
                if (!f) throw ParseError("cannot write '" + red_map_out + "'");
                for (int v : r.original_vertex) f << v + 1 << "\n";
                rep.add("map-out", red_map_out);
            }
            return finish(kExitOk);
        }

        if (*exp) {
            ExperimentOptions eo;
            eo.tier = exp_tier;
            eo.seed = g.seed;
            eo.threads = g.threads;
            eo.limits = g.limits();
            RunReport sub;
            if (exp_name == "paper-5-cores") {
                sub = experiment_paper_5_cores(eo);
            } else if (exp_name == "conjecture-18") {
                std::vector<Graph> factors;
                std::vector<std::string> names;
                std::size_t pos = 0;
                while (pos <= exp_with.size()) {
                    std::size_t next = exp_with.find(',', pos);
                    if (next == std::string::npos) next = exp_with.size();
                    std::string tok = exp_with.substr(pos, next - pos);
                    if (!tok.empty() && tok.find_first_not_of("0123456789") == std::string::npos &&
                        !names.empty()) {
                        names.back() += "," + tok;
                    } else if (!tok.empty()) {
                        names.push_back(tok);
                    }
                    pos = next + 1;
                }
                for (const auto& nm : names) factors.push_back(parse_graph_spec(nm, g.vertex_limit));
                sub = experiment_conjecture_18(factors, names, eo);
            } else {
                sub = experiment_oracle_suite(eo);
            }
            for (auto& kv : sub.fields) rep.fields.push_back(std::move(kv));
            bool inconclusive = false;
            for (const auto& [k, v] : rep.fields)
                if (v == "inconclusive") inconclusive = true;
            int code = inconclusive ? kExitInconclusive : kExitOk;
            finish(code);
            return code;
        }
    } catch (const BudgetExceeded& e) {
        rep.add("verdict", "inconclusive");
        rep.add("error", e.what());
        finish(kExitInconclusive);
        return kExitInconclusive;
    } catch (const Error& e) {
        rep.add("error", e.what());
        finish(kExitError);
        return kExitError;
    }
    err << "no subcommand selected\n";
    return kExitError;
}

} // namespace homtw

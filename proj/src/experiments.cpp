#include "homtw/experiments.hpp"

#include "homtw/algebra.hpp"
#include "homtw/errors.hpp"
#include "homtw/named_graphs.hpp"

#include <chrono>

namespace homtw {

Graph random_graph(std::mt19937_64& rng, int n, double edge_prob, double loop_prob) {
    Graph g(n);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (int u = 0; u < n; ++u) {
        if (loop_prob > 0 && coin(rng) < loop_prob) g.add_edge(u, u);
        for (int v = u + 1; v < n; ++v)
            if (coin(rng) < edge_prob) g.add_edge(u, v);
    }
    return g;
}

namespace {

// Compare DP against the backtracking oracle on one instance.
bool oracle_check(const Graph& g, const Graph& h, OracleSweepResult& res) {
    ++res.instances;
    HomOptions bo;
    bo.mode = HomMode::count;
    HomResult brute = hom_backtrack(g, h, bo);
    res.backtrack_nodes += brute.stats.nodes;

    NiceDecomposition nd = to_nice(heuristic_decomposition(g));
    HomResult dp = hom_dp(g, h, nd, HomMode::count);
    res.dp_cells += dp.stats.dp_cells;

    bool ok = dp.decision == brute.decision && *dp.count == *brute.count;
    if (!ok) ++res.mismatches;
    return ok;
}

} // namespace

OracleSweepResult oracle_sweep_exhaustive(int max_n, const std::vector<Graph>& targets) {
    OracleSweepResult res;
    for (int n = 1; n <= max_n; ++n) {
        const int pairs = n * (n - 1) / 2;
        std::vector<std::pair<int, int>> all_pairs;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) all_pairs.emplace_back(u, v);
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
            Graph g(n);
            for (int i = 0; i < pairs; ++i)
                if ((mask >> i) & 1) g.add_edge(all_pairs[i].first, all_pairs[i].second);
            if (!is_connected(g)) continue;
            for (const auto& h : targets) oracle_check(g, h, res);
        }
    }
    return res;
}

OracleSweepResult oracle_sweep_random(int pairs, std::uint64_t seed, int max_gn, int max_hn) {
    OracleSweepResult res;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> gn(1, max_gn), hn(1, max_hn);
    std::uniform_real_distribution<double> prob(0.1, 0.9);
    for (int i = 0; i < pairs; ++i) {
        Graph g = random_graph(rng, gn(rng), prob(rng), 0.05);
        Graph h = random_graph(rng, hn(rng), prob(rng), 0.10);
        oracle_check(g, h, res);
    }
    return res;
}

namespace {

void run_core_item(RunReport& rep, const std::string& name, const Graph& graph,
                   const ExperimentOptions& opt) {
    CoreOptions co;
    co.limits = opt.limits;
    co.threads = opt.threads;
    auto t0 = std::chrono::steady_clock::now();
    try {
        CoreCertificate cert = is_core(graph, co);
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
        rep.add(name,
                cert.verdict == CoreCertificate::Verdict::is_core ? "is-core" : "not-core");
        rep.add(name + ".nodes", static_cast<long long>(cert.total_nodes));
        rep.add(name + ".ms", static_cast<long long>(ms));
        if (cert.witness) rep.add(name + ".avoided-vertex", cert.avoided_vertex);
    } catch (const BudgetExceeded& e) {
        rep.add(name, "inconclusive");
        rep.add(name + ".error", e.what());
    }
}

} // namespace

RunReport experiment_paper_5_cores(const ExperimentOptions& opt) {
    RunReport rep;
    rep.add("experiment", "paper-5-cores");
    rep.add("tier", opt.tier);
    Graph k3 = make_clique(3);
    run_core_item(rep, "k3xgrotzsch", direct_product({k3, make_grotzsch()}), opt);
    if (opt.tier == "full") {
        run_core_item(rep, "k3xchvatal", direct_product({k3, make_chvatal()}), opt);
        run_core_item(rep, "k3xbrinkmann", direct_product({k3, make_brinkmann()}), opt);
    }
    return rep;
}

RunReport experiment_conjecture_18(const std::vector<Graph>& factors,
                                   const std::vector<std::string>& factor_names,
                                   const ExperimentOptions& opt) {
    RunReport rep;
    rep.add("experiment", "conjecture-18");
    if (factors.size() < 2) {
        rep.add("error", "need at least two factor graphs");
        return rep;
    }
    CoreOptions co;
    co.limits = opt.limits;
    co.threads = opt.threads;
    bool preconditions_ok = true;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const std::string tag = "factor[" + factor_names[i] + "]";
        if (!is_connected(factors[i])) {
            rep.add(tag, "not connected");
            preconditions_ok = false;
            continue;
        }
        bool core_ok = is_core(factors[i], co).verdict == CoreCertificate::Verdict::is_core;
        bool indecomposable = true;
        if (!bipartition(factors[i]) && factors[i].size() >= 2) {
            FactorizeOptions fo;
            fo.limits = opt.limits;
            indecomposable = !factorize_prime(factors[i], fo).decomposable();
        }
        rep.add(tag, std::string(core_ok ? "core" : "NOT-core") + ", " +
                         (indecomposable ? "indecomposable" : "DECOMPOSABLE"));
        preconditions_ok = preconditions_ok && core_ok && indecomposable;
    }
    SolveOptions so;
    so.limits = opt.limits;
    for (std::size_t i = 0; i < factors.size() && preconditions_ok; ++i)
        for (std::size_t j = i + 1; j < factors.size(); ++j) {
            bool inc = incomparable(factors[i], factors[j], so);
            rep.add("incomparable[" + factor_names[i] + "," + factor_names[j] + "]",
                    inc ? "yes" : "NO");
            preconditions_ok = preconditions_ok && inc;
        }
    if (!preconditions_ok) {
        rep.add("verdict", "preconditions-failed");
        return rep;
    }
    run_core_item(rep, "product", direct_product(factors), opt);
    return rep;
}

RunReport experiment_oracle_suite(const ExperimentOptions& opt) {
    RunReport rep;
    rep.add("experiment", "oracle-suite");
    rep.add("tier", opt.tier);
    std::vector<Graph> targets;
    OracleSweepResult ex, rnd;
    if (opt.tier == "full") {
        targets = {make_clique(3), make_clique(4), make_cycle(5), make_cycle(7)};
        ex = oracle_sweep_exhaustive(6, targets);
        rnd = oracle_sweep_random(500, opt.seed, 9, 7);
    } else {
        targets = {make_clique(3), make_cycle(5)};
        ex = oracle_sweep_exhaustive(5, targets);
        rnd = oracle_sweep_random(100, opt.seed, 7, 6);
    }
    rep.add("exhaustive.instances", static_cast<long long>(ex.instances));
    rep.add("exhaustive.mismatches", static_cast<long long>(ex.mismatches));
    rep.add("random.instances", static_cast<long long>(rnd.instances));
    rep.add("random.mismatches", static_cast<long long>(rnd.mismatches));
    rep.add("verdict", ex.mismatches + rnd.mismatches == 0 ? "0 mismatches" : "MISMATCHES");
    return rep;
}

} // namespace homtw

#include "homtw/algebra.hpp"

#include "homtw/cores.hpp"
#include "homtw/errors.hpp"
#include "homtw/isomorphism.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace homtw {

int Factorization::vertex_of(const std::vector<int>& tuple) const {
    for (std::size_t v = 0; v < coords.size(); ++v)
        if (coords[v] == tuple) return static_cast<int>(v);
    throw PreconditionError("coordinate tuple not present in factorization");
}

namespace {

// Backtracking product-labeling search for one split H = A x B with
// |A| = a, |B| = b. Every vertex gets a grid cell (i,j); the edge relations
// of A and B start unknown and get forced by the product edge law:
//   uv in E(H)  =>  both coordinate pairs are edges,
//   uv not in E(H) => not both coordinate pairs are edges.
// The second constraint defers while both sides are unknown and fires when
// either side turns into an edge. Each search node recomputes per-vertex
// cell domains against all assigned vertices and branches on the smallest
// domain; unused coordinate names are interchangeable, so fresh values are
// capped at the next unused one on either side.
class SplitSearch {
public:
    SplitSearch(const Graph& h, int a, int b, const SearchLimits& limits)
        : h_(h), n_(h.size()), a_(a), b_(b), limits_(limits) {
        if (limits.time_budget.count() > 0)
            deadline_ = std::chrono::steady_clock::now() + limits.time_budget;
        ea_.assign(static_cast<std::size_t>(a_) * a_, U);
        eb_.assign(static_cast<std::size_t>(b_) * b_, U);
        pend_a_.assign(static_cast<std::size_t>(a_) * a_, {});
        pend_b_.assign(static_cast<std::size_t>(b_) * b_, {});
        coord_a_.assign(n_, -1);
        coord_b_.assign(n_, -1);
        used_.assign(static_cast<std::size_t>(a_) * b_, 0);
    }

    struct Split {
        Graph a, b;
        std::vector<int> coord_a, coord_b;
    };

    std::optional<Split> run(std::uint64_t* nodes_out) {
        bool found = dfs(0);
        if (nodes_out) *nodes_out += nodes_;
        if (!found) return std::nullopt;
        Split s;
        s.a = Graph(a_);
        s.b = Graph(b_);
        for (int i = 0; i < a_; ++i)
            for (int k = i; k < a_; ++k)
                if (ea_[i * a_ + k] == Y) s.a.add_edge(i, k);
        for (int j = 0; j < b_; ++j)
            for (int l = j; l < b_; ++l)
                if (eb_[j * b_ + l] == Y) s.b.add_edge(j, l);
        s.coord_a = coord_a_;
        s.coord_b = coord_b_;
        // full product law re-check
        for (int u = 0; u < n_; ++u)
            for (int v = u; v < n_; ++v) {
                bool prod = s.a.adjacent(coord_a_[u], coord_a_[v]) &&
                            s.b.adjacent(coord_b_[u], coord_b_[v]);
                if (prod != h_.adjacent(u, v))
                    throw Error("internal: product labeling failed the edge-law re-check");
            }
        return s;
    }

private:
    enum Entry : char { U = 0, Y = 1, N = 2 };

    struct TrailOp {
        enum Kind : char { entry_a, entry_b, pend_push_a, pend_push_b, assign } kind;
        int idx;
    };

    const Graph& h_;
    int n_, a_, b_;
    SearchLimits limits_;
    std::optional<std::chrono::steady_clock::time_point> deadline_;
    std::vector<char> ea_, eb_;
    std::vector<std::vector<std::pair<int, int>>> pend_a_, pend_b_; // deferred non-edge partners
    std::vector<int> coord_a_, coord_b_;
    std::vector<char> used_;
    std::vector<int> assigned_;
    std::vector<TrailOp> trail_;
    std::uint64_t nodes_ = 0;
    int max_a_used_ = -1, max_b_used_ = -1;

    int ia(int i, int k) const { return i * a_ + k; }
    int ib(int j, int l) const { return j * b_ + l; }

    void bump() {
        ++nodes_;
        if (limits_.max_nodes && nodes_ > limits_.max_nodes)
            throw BudgetExceeded("factorization search exceeded its node budget");
        if (deadline_ && nodes_ % 1024 == 0 && std::chrono::steady_clock::now() > *deadline_)
            throw BudgetExceeded("factorization search exceeded its time budget");
    }

    bool set_a(int i, int k, Entry val) {
        char& cur = ea_[ia(i, k)];
        if (cur == val) return true;
        if (cur != U) return false;
        cur = val;
        ea_[ia(k, i)] = val;
        trail_.push_back({TrailOp::entry_a, ia(std::min(i, k), std::max(i, k))});
        if (val == Y)
            for (auto [j, l] : pend_a_[ia(std::min(i, k), std::max(i, k))])
                if (!set_b(j, l, N)) return false;
        return true;
    }

    bool set_b(int j, int l, Entry val) {
        char& cur = eb_[ib(j, l)];
        if (cur == val) return true;
        if (cur != U) return false;
        cur = val;
        eb_[ib(l, j)] = val;
        trail_.push_back({TrailOp::entry_b, ib(std::min(j, l), std::max(j, l))});
        if (val == Y)
            for (auto [i, k] : pend_b_[ib(std::min(j, l), std::max(j, l))])
                if (!set_a(i, k, N)) return false;
        return true;
    }

    bool constrain_pair(int u, int v) {
        int i = coord_a_[u], k = coord_a_[v];
        int j = coord_b_[u], l = coord_b_[v];
        if (h_.adjacent(u, v))
            return set_a(i, k, Y) && set_b(j, l, Y);
        char sa = ea_[ia(i, k)], sb = eb_[ib(j, l)];
        if (sa == Y && sb == Y) return false;
        if (sa == Y) return set_b(j, l, N);
        if (sb == Y) return set_a(i, k, N);
        if (sa == N || sb == N) return true;
        int ka = ia(std::min(i, k), std::max(i, k));
        int kb = ib(std::min(j, l), std::max(j, l));
        pend_a_[ka].emplace_back(j, l);
        trail_.push_back({TrailOp::pend_push_a, ka});
        pend_b_[kb].emplace_back(i, k);
        trail_.push_back({TrailOp::pend_push_b, kb});
        return true;
    }

    bool try_assign(int u, int i, int j) {
        coord_a_[u] = i;
        coord_b_[u] = j;
        used_[i * b_ + j] = 1;
        assigned_.push_back(u);
        trail_.push_back({TrailOp::assign, u});
        if (!constrain_pair(u, u)) return false; // loop / non-loop self pair
        for (int v : assigned_)
            if (v != u && !constrain_pair(u, v)) return false;
        return true;
    }

    void undo_to(std::size_t m) {
        while (trail_.size() > m) {
            TrailOp op = trail_.back();
            trail_.pop_back();
            switch (op.kind) {
            case TrailOp::entry_a: {
                int i = op.idx / a_, k = op.idx % a_;
                ea_[ia(i, k)] = U;
                ea_[ia(k, i)] = U;
                break;
            }
            case TrailOp::entry_b: {
                int j = op.idx / b_, l = op.idx % b_;
                eb_[ib(j, l)] = U;
                eb_[ib(l, j)] = U;
                break;
            }
            case TrailOp::pend_push_a:
                pend_a_[op.idx].pop_back();
                break;
            case TrailOp::pend_push_b:
                pend_b_[op.idx].pop_back();
                break;
            case TrailOp::assign: {
                int u = op.idx;
                used_[coord_a_[u] * b_ + coord_b_[u]] = 0;
                coord_a_[u] = -1;
                coord_b_[u] = -1;
                assigned_.pop_back();
                break;
            }
            }
        }
    }

    // Allowed-cell mask for a vertex adjacent (or not) to assigned v.
    void build_pair_mask(int v, bool edge, std::vector<std::uint64_t>& out) const {
        const int cells = a_ * b_;
        const int words = (cells + 63) / 64;
        out.assign(words, 0);
        const int k = coord_a_[v], l = coord_b_[v];
        for (int i = 0; i < a_; ++i) {
            char sa = ea_[i * a_ + k];
            for (int j = 0; j < b_; ++j) {
                char sb = eb_[j * b_ + l];
                bool ok = edge ? (sa != N && sb != N) : !(sa == Y && sb == Y);
                if (ok) {
                    int c = i * b_ + j;
                    out[c >> 6] |= std::uint64_t{1} << (c & 63);
                }
            }
        }
    }

    bool dfs(int assigned_count) {
        bump();
        if (assigned_count == n_) return true;
        const int cells = a_ * b_;
        const int words = (cells + 63) / 64;

        // base mask: unused cells
        std::vector<std::uint64_t> base(words, 0);
        for (int c = 0; c < cells; ++c)
            if (!used_[c]) base[c >> 6] |= std::uint64_t{1} << (c & 63);

        // self masks shared across vertices (loop vs no loop)
        std::vector<std::uint64_t> self_loop(words, 0), self_plain(words, 0);
        for (int i = 0; i < a_; ++i) {
            char sa = ea_[i * a_ + i];
            for (int j = 0; j < b_; ++j) {
                char sb = eb_[j * b_ + j];
                int c = i * b_ + j;
                if (sa != N && sb != N) self_loop[c >> 6] |= std::uint64_t{1} << (c & 63);
                if (!(sa == Y && sb == Y)) self_plain[c >> 6] |= std::uint64_t{1} << (c & 63);
            }
        }

        std::vector<std::vector<std::uint64_t>> edge_mask(assigned_.size()),
            non_mask(assigned_.size());
        for (std::size_t vi = 0; vi < assigned_.size(); ++vi) {
            build_pair_mask(assigned_[vi], true, edge_mask[vi]);
            build_pair_mask(assigned_[vi], false, non_mask[vi]);
        }

        int pick = -1, pick_count = 1 << 30;
        std::vector<std::uint64_t> pick_dom, dom(words);
        for (int u = 0; u < n_; ++u) {
            if (coord_a_[u] >= 0) continue;
            const auto& self = h_.has_loop(u) ? self_loop : self_plain;
            for (int w = 0; w < words; ++w) dom[w] = base[w] & self[w];
            for (std::size_t vi = 0; vi < assigned_.size(); ++vi) {
                const auto& mask = h_.adjacent(u, assigned_[vi]) ? edge_mask[vi] : non_mask[vi];
                for (int w = 0; w < words; ++w) dom[w] &= mask[w];
            }
            int count = 0;
            for (int w = 0; w < words; ++w) count += std::popcount(dom[w]);
            if (count == 0) return false;
            if (count < pick_count) {
                pick_count = count;
                pick = u;
                pick_dom = dom;
            }
        }

        // fresh coordinate names capped at the next unused value on each side
        for (int c = 0; c < cells; ++c) {
            if (!((pick_dom[c >> 6] >> (c & 63)) & 1)) continue;
            int i = c / b_, j = c % b_;
            if (i > max_a_used_ + 1 || j > max_b_used_ + 1) continue;
            std::size_t m = trail_.size();
            int old_ma = max_a_used_, old_mb = max_b_used_;
            max_a_used_ = std::max(max_a_used_, i);
            max_b_used_ = std::max(max_b_used_, j);
            if (try_assign(pick, i, j) && dfs(assigned_count + 1)) return true;
            undo_to(m);
            max_a_used_ = old_ma;
            max_b_used_ = old_mb;
        }
        return false;
    }
};

struct FactorizeState {
    const FactorizeOptions& opt;
    std::uint64_t nodes = 0;
};

// Recursive prime factorization of a connected non-bipartite graph.
void factorize_rec(const Graph& h, FactorizeState& st, std::vector<Graph>& factors,
                   std::vector<std::vector<int>>& coords) {
    const int n = h.size();
    for (int a = 2; static_cast<std::int64_t>(a) * a <= n; ++a) {
        if (n % a != 0) continue;
        SplitSearch search(h, a, n / a, st.opt.limits);
        auto split = search.run(&st.nodes);
        if (!split) continue;
        // recurse into both sides and splice the coordinate tuples
        std::vector<Graph> fa, fb;
        std::vector<std::vector<int>> ca, cb;
        factorize_rec(split->a, st, fa, ca);
        factorize_rec(split->b, st, fb, cb);
        factors = fa;
        factors.insert(factors.end(), fb.begin(), fb.end());
        coords.assign(n, {});
        for (int v = 0; v < n; ++v) {
            coords[v] = ca[split->coord_a[v]];
            const auto& rest = cb[split->coord_b[v]];
            coords[v].insert(coords[v].end(), rest.begin(), rest.end());
        }
        return;
    }
    // indecomposable
    factors = {h};
    coords.assign(n, {});
    for (int v = 0; v < n; ++v) coords[v] = {v};
}

} // namespace

Factorization factorize_prime(const Graph& h, const FactorizeOptions& opt) {
    if (h.size() < 2)
        throw PreconditionError("factorize_prime requires at least two vertices");
    if (!is_connected(h))
        throw PreconditionError("factorize_prime requires a connected graph");
    if (bipartition(h))
        throw PreconditionError(
            "factorize_prime requires a non-bipartite graph (unique factorization fails "
            "otherwise)");
    FactorizeState st{opt};
    Factorization f;
    factorize_rec(h, st, f.factors, f.coords);

    // deterministic factor order: size, then edge count, then edge list
    std::vector<int> perm(f.factors.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
    std::stable_sort(perm.begin(), perm.end(), [&](int x, int y) {
        const Graph &gx = f.factors[x], &gy = f.factors[y];
        if (gx.size() != gy.size()) return gx.size() < gy.size();
        if (gx.edge_count() != gy.edge_count()) return gx.edge_count() < gy.edge_count();
        return gx.edges() < gy.edges();
    });
    std::vector<Graph> sorted_factors;
    for (int i : perm) sorted_factors.push_back(f.factors[i]);
    std::vector<std::vector<int>> sorted_coords(h.size(), std::vector<int>(perm.size()));
    for (int v = 0; v < h.size(); ++v)
        for (std::size_t i = 0; i < perm.size(); ++i)
            sorted_coords[v][i] = f.coords[v][perm[i]];
    f.factors = std::move(sorted_factors);
    f.coords = std::move(sorted_coords);
    return f;
}

std::optional<std::vector<int>> verify_factorization(const Graph& h,
                                                     const std::vector<Graph>& factors) {
    if (factors.empty()) throw PreconditionError("verify_factorization needs factors");
    std::int64_t prod = 1;
    for (const auto& f : factors) {
        prod *= std::max(1, f.size());
        if (prod > h.size() * 2LL + 16) break;
    }
    if (prod != h.size())
        throw PreconditionError("factor sizes multiply to " + std::to_string(prod) +
                                ", expected " + std::to_string(h.size()));
    Graph materialized = direct_product(factors, std::max<std::int64_t>(h.size(), 1));
    return isomorphic(h, materialized);
}

ProjectivityReport is_projective(const Graph& h, const ProjectivityOptions& opt) {
    if (!is_connected(h) || h.size() < 3)
        throw PreconditionError("is_projective requires a connected graph on >= 3 vertices");
    ProjectivityReport rep;
    if (h.size() > opt.max_size) {
        rep.verdict = ProjectivityReport::Verdict::inconclusive;
        rep.detail = "size " + std::to_string(h.size()) + " above the enumeration cap " +
                     std::to_string(opt.max_size) + "; raise the cap to force the check";
        return rep;
    }
    const int k = h.size();
    Graph h2 = direct_product({h, h});
    HomOptions ho;
    ho.limits = opt.limits;
    ho.limits.enumeration_cap = 0; // projective verdicts need exhaustion
    for (int x = 0; x < k; ++x) ho.pins.emplace_back(x * k + x, x);

    std::vector<int> pi1(h2.size()), pi2(h2.size());
    for (int v = 0; v < h2.size(); ++v) {
        pi1[v] = h2.labels()[v][0];
        pi2[v] = h2.labels()[v][1];
    }
    std::optional<Homomorphism> witness;
    SearchStats stats;
    bool exhausted;
    try {
        exhausted = hom_enumerate(h2, h, ho, [&](const std::vector<int>& f) {
            if (f != pi1 && f != pi2) {
                witness = Homomorphism{f};
                return false; // stop: one non-projection settles it
            }
            return true;
        }, &stats);
    } catch (const BudgetExceeded& e) {
        rep.verdict = ProjectivityReport::Verdict::inconclusive;
        rep.detail = e.what();
        return rep;
    }
    if (witness) {
        rep.verdict = ProjectivityReport::Verdict::not_projective;
        rep.witness = std::move(witness);
        rep.detail = "idempotent non-projection found";
    } else if (exhausted) {
        rep.verdict = ProjectivityReport::Verdict::projective;
        rep.detail = "all idempotent homomorphisms from H^2 are projections (nodes=" +
                     std::to_string(stats.nodes) + ")";
    } else {
        rep.verdict = ProjectivityReport::Verdict::inconclusive;
        rep.detail = "enumeration stopped early";
    }
    return rep;
}

bool validate_projectivity_witness(const Graph& h, const Homomorphism& f) {
    const int k = h.size();
    Graph h2 = direct_product({h, h});
    if (static_cast<int>(f.map.size()) != h2.size()) return false;
    if (!is_valid_hom(h2, h, f.map)) return false;
    for (int x = 0; x < k; ++x)
        if (f.map[x * k + x] != x) return false;
    bool differs1 = false, differs2 = false;
    for (int v = 0; v < h2.size(); ++v) {
        if (f.map[v] != h2.labels()[v][0]) differs1 = true;
        if (f.map[v] != h2.labels()[v][1]) differs2 = true;
    }
    return differs1 && differs2;
}

Homomorphism decomposable_nonprojective_witness(const Graph& h, const Factorization& f) {
    if (!f.decomposable())
        throw PreconditionError(
            "decomposable_nonprojective_witness requires >= 2 factors");
    const int k = h.size();
    // coordinate lookup: tuple -> vertex
    std::map<std::vector<int>, int> lookup;
    for (int v = 0; v < k; ++v) lookup[f.coords[v]] = v;

    Homomorphism w;
    w.map.assign(static_cast<std::size_t>(k) * k, -1);
    for (int u = 0; u < k; ++u) {
        for (int v = 0; v < k; ++v) {
            // first coordinate from u, remaining coordinates from v
            std::vector<int> tuple = f.coords[v];
            tuple[0] = f.coords[u][0];
            auto it = lookup.find(tuple);
            if (it == lookup.end())
                throw Error("internal: mixed tuple missing from the factorization");
            w.map[u * k + v] = it->second;
        }
    }
    if (!validate_projectivity_witness(h, w))
        throw Error("internal: constructed mixed-coordinate map failed validation");
    return w;
}

TrulyProjectiveResult truly_projective_check(const Graph& h, const Graph& w, int s,
                                             const TrulyProjectiveOptions& opt) {
    if (s < 2) throw PreconditionError("truly_projective_check requires s >= 2");
    if (h.size() < 3 || !is_connected(h))
        throw PreconditionError("H must be connected with at least three vertices");
    if (!is_connected(w))
        throw PreconditionError("W must be connected");
    CoreOptions co;
    co.limits = opt.limits;
    if (is_core(h, co).verdict != CoreCertificate::Verdict::is_core)
        throw PreconditionError("H must be a core for the truly-projective check");
    if (is_core(w, co).verdict != CoreCertificate::Verdict::is_core)
        throw PreconditionError("W must be a core for the truly-projective check");

    std::vector<Graph> parts(s, h);
    parts.push_back(w);
    Graph p = direct_product(parts, opt.vertex_limit);

    HomOptions ho;
    ho.limits = opt.limits;
    for (int x = 0; x < h.size(); ++x) {
        std::vector<int> tuple(s + 1, x);
        for (int y = 0; y < w.size(); ++y) {
            tuple[s] = y;
            ho.pins.emplace_back(static_cast<int>(product_index(parts, tuple)), x);
        }
    }
    std::vector<std::vector<int>> projections(s, std::vector<int>(p.size()));
    for (int v = 0; v < p.size(); ++v)
        for (int i = 0; i < s; ++i) projections[i][v] = p.labels()[v][i];

    ho.limits.enumeration_cap = 0; // the verdict needs exhaustion
    TrulyProjectiveResult res;
    res.ok = true;
    bool exhaustive = hom_enumerate(p, h, ho, [&](const std::vector<int>& f) {
        for (int i = 0; i < s; ++i)
            if (f == projections[i]) return true;
        res.ok = false;
        res.witness = Homomorphism{f};
        return false;
    });
    if (res.ok && !exhaustive)
        throw BudgetExceeded("truly-projective enumeration stopped before exhausting");
    return res;
}

} // namespace homtw

#include "homtw/hom.hpp"

#include "homtw/errors.hpp"

#include <algorithm>
#include <bit>

namespace homtw {

bool is_valid_hom(const Graph& g, const Graph& h, const std::vector<int>& map) {
    if (static_cast<int>(map.size()) != g.size()) return false;
    for (int v : map)
        if (v < 0 || v >= h.size()) return false;
    for (auto [u, v] : g.edges())
        if (!h.adjacent(map[u], map[v])) return false;
    return true;
}

namespace {

// CSP search over word-packed domains. One variable per source vertex,
// values are target vertices, constraints are target-edge membership on
// source edges. AC-3 style propagation driven by a changed-variable
// worklist; trail-based undo.
class Backtracker {
public:
    Backtracker(const Graph& g, const Graph& h, const HomOptions& opt)
        : g_(g), h_(h), n_(g.size()), hn_(h.size()), words_((hn_ + 63) / 64), opt_(opt) {
        if (opt.limits.time_budget.count() > 0)
            deadline_ = std::chrono::steady_clock::now() + opt.limits.time_budget;
        hrow_.assign(static_cast<std::size_t>(hn_) * words_, 0);
        for (int a = 0; a < hn_; ++a)
            for (int b : h_.neighbors(a)) set_bit(&hrow_[static_cast<std::size_t>(a) * words_], b);

        dom_.assign(static_cast<std::size_t>(n_) * words_, 0);
        domsize_.assign(n_, 0);
        if (opt.lists && static_cast<int>(opt.lists->size()) != n_)
            throw PreconditionError("lists table size does not match source vertex count");
        for (int u = 0; u < n_; ++u) {
            auto* d = dom(u);
            if (opt.lists) {
                for (int b : (*opt.lists)[u]) {
                    if (b < 0 || b >= hn_)
                        throw PreconditionError("list entry out of target range");
                    set_bit(d, b);
                }
            } else {
                for (int b = 0; b < hn_; ++b) set_bit(d, b);
            }
            if (g_.has_loop(u)) {
                for (int w = 0; w < words_; ++w)
                    d[w] &= loop_mask(w);
            }
            domsize_[u] = popcount(d);
        }
        for (auto [x, y] : opt.pins) {
            if (x < 0 || x >= n_ || y < 0 || y >= hn_)
                throw PreconditionError("pin out of range");
            if (opt.lists && !test_bit(dom(x), y) &&
                std::find((*opt.lists)[x].begin(), (*opt.lists)[x].end(), y) ==
                    (*opt.lists)[x].end())
                throw PreconditionError("pin " + std::to_string(x) + "->" + std::to_string(y) +
                                        " lies outside the vertex's list");
            for (int w = 0; w < words_; ++w) dom(x)[w] &= (y >> 6 == w) ? (1ull << (y & 63)) : 0;
            domsize_[x] = popcount(dom(x));
        }
    }

    bool root_consistent() {
        if (n_ == 0) return true;
        for (int u = 0; u < n_; ++u) {
            if (domsize_[u] == 0) return false;
            enqueue(u);
        }
        return propagate();
    }

    // decide / find_one
    std::optional<std::vector<int>> find() {
        if (!root_consistent()) return std::nullopt;
        if (dfs_find()) return extract_min_map();
        return std::nullopt;
    }

    mpz_class count() {
        if (n_ == 0) return 1;
        if (!root_consistent()) return 0;
        mpz_class total = 1;
        for (const auto& comp : connected_components(g_)) {
            mpz_class c = count_component(comp);
            if (c == 0) return 0;
            total *= c;
        }
        return total;
    }

    // Exhaustive lexicographic enumeration; returns false if visit aborted.
    bool enumerate(const std::function<bool(const std::vector<int>&)>& visit) {
        if (n_ == 0) return visit({});
        if (!root_consistent()) return true;
        return dfs_enumerate(visit);
    }

    std::uint64_t nodes() const { return nodes_; }

private:
    std::uint64_t* dom(int u) { return &dom_[static_cast<std::size_t>(u) * words_]; }
    const std::uint64_t* row(int b) const { return &hrow_[static_cast<std::size_t>(b) * words_]; }

    static void set_bit(std::uint64_t* w, int i) { w[i >> 6] |= 1ull << (i & 63); }
    static bool test_bit(const std::uint64_t* w, int i) { return (w[i >> 6] >> (i & 63)) & 1; }
    int popcount(const std::uint64_t* w) const {
        int c = 0;
        for (int i = 0; i < words_; ++i) c += std::popcount(w[i]);
        return c;
    }
    std::uint64_t loop_mask(int word) const {
        std::uint64_t m = 0;
        for (int b = word * 64; b < std::min(hn_, word * 64 + 64); ++b)
            if (h_.adjacent(b, b)) m |= 1ull << (b & 63);
        return m;
    }
    int first_value(int u) {
        const auto* d = dom(u);
        for (int w = 0; w < words_; ++w)
            if (d[w]) return w * 64 + std::countr_zero(d[w]);
        return -1;
    }

    void save(int u) {
        trail_var_.push_back(u);
        trail_size_.push_back(domsize_[u]);
        const auto* d = dom(u);
        for (int w = 0; w < words_; ++w) trail_words_.push_back(d[w]);
    }
    std::size_t mark() const { return trail_var_.size(); }
    void undo_to(std::size_t m) {
        while (trail_var_.size() > m) {
            int u = trail_var_.back();
            trail_var_.pop_back();
            domsize_[u] = trail_size_.back();
            trail_size_.pop_back();
            auto* d = dom(u);
            for (int w = words_ - 1; w >= 0; --w) {
                d[w] = trail_words_.back();
                trail_words_.pop_back();
            }
        }
    }

    void enqueue(int u) {
        if (!inqueue_.empty() && inqueue_[u]) return;
        if (inqueue_.empty()) inqueue_.assign(n_, 0);
        inqueue_[u] = 1;
        queue_.push_back(u);
    }

    // Revise all neighbors of changed variables until fixpoint.
    bool propagate() {
        if (inqueue_.empty()) inqueue_.assign(n_, 0);
        while (!queue_.empty()) {
            int v = queue_.back();
            queue_.pop_back();
            inqueue_[v] = 0;
            // support mask: union of target rows over dom(v)
            support_.assign(words_, 0);
            {
                const auto* d = dom(v);
                for (int w = 0; w < words_; ++w) {
                    std::uint64_t bits = d[w];
                    while (bits) {
                        int b = w * 64 + std::countr_zero(bits);
                        bits &= bits - 1;
                        const auto* r = row(b);
                        for (int x = 0; x < words_; ++x) support_[x] |= r[x];
                    }
                }
            }
            for (int u : g_.neighbors(v)) {
                if (u == v) continue;
                auto* d = dom(u);
                bool changed = false;
                for (int w = 0; w < words_; ++w)
                    if (d[w] & ~support_[w]) { changed = true; break; }
                if (!changed) continue;
                save(u);
                int size = 0;
                for (int w = 0; w < words_; ++w) {
                    d[w] &= support_[w];
                    size += std::popcount(d[w]);
                }
                domsize_[u] = size;
                if (size == 0) {
                    while (!queue_.empty()) {
                        inqueue_[queue_.back()] = 0;
                        queue_.pop_back();
                    }
                    return false;
                }
                enqueue(u);
            }
        }
        return true;
    }

    void bump() {
        ++nodes_;
        if (opt_.limits.max_nodes && nodes_ > opt_.limits.max_nodes)
            throw BudgetExceeded("homomorphism search exceeded its node budget");
        if (deadline_ && nodes_ % 1024 == 0 &&
            std::chrono::steady_clock::now() > *deadline_)
            throw BudgetExceeded("homomorphism search exceeded its time budget");
    }

    bool assign(int u, int value) {
        save(u);
        auto* d = dom(u);
        for (int w = 0; w < words_; ++w) d[w] = 0;
        set_bit(d, value);
        domsize_[u] = 1;
        enqueue(u);
        return propagate();
    }

    // Branch variable: smallest domain among variables that still have an
    // undecided neighbor; -1 when every constraint is already resolved.
    int pick_branch_var() {
        int best = -1, best_size = 1 << 30;
        for (int u = 0; u < n_; ++u) {
            if (domsize_[u] <= 1) {
                if (domsize_[u] == 1) continue;
                return u; // empty domain: fail fast
            }
            bool constrained = false;
            for (int v : g_.neighbors(u))
                if (v != u && domsize_[v] > 1) { constrained = true; break; }
            if (!constrained) continue;
            if (domsize_[u] < best_size) { best = u; best_size = domsize_[u]; }
        }
        return best;
    }

    bool dfs_find() {
        bump();
        int u = pick_branch_var();
        if (u < 0) return true; // undecided vars are mutually unconstrained
        auto values = domain_values(u);
        for (int value : values) {
            std::size_t m = mark();
            if (assign(u, value) && dfs_find()) return true;
            undo_to(m);
        }
        return false;
    }

    std::vector<int> domain_values(int u) {
        std::vector<int> vals;
        vals.reserve(domsize_[u]);
        const auto* d = dom(u);
        for (int w = 0; w < words_; ++w) {
            std::uint64_t bits = d[w];
            while (bits) {
                vals.push_back(w * 64 + std::countr_zero(bits));
                bits &= bits - 1;
            }
        }
        return vals;
    }

    std::vector<int> extract_min_map() {
        std::vector<int> map(n_);
        for (int u = 0; u < n_; ++u) map[u] = first_value(u);
        return map;
    }

    mpz_class count_component(const std::vector<int>& comp) {
        bump();
        // branch on the smallest constrained domain inside this component
        int pick = -1, pick_size = 1 << 30;
        mpz_class free_product = 1;
        for (int u : comp) {
            if (domsize_[u] == 1) continue;
            bool constrained = false;
            for (int v : g_.neighbors(u))
                if (v != u && domsize_[v] > 1) { constrained = true; break; }
            if (!constrained) {
                free_product *= domsize_[u];
                continue;
            }
            if (domsize_[u] < pick_size) { pick = u; pick_size = domsize_[u]; }
        }
        if (pick < 0) return free_product; // all remaining choices independent
        mpz_class total = 0;
        for (int value : domain_values(pick)) {
            std::size_t m = mark();
            if (assign(pick, value)) total += count_component(comp);
            undo_to(m);
        }
        return total;
    }

    bool dfs_enumerate(const std::function<bool(const std::vector<int>&)>& visit) {
        bump();
        int u = -1;
        for (int v = 0; v < n_; ++v)
            if (domsize_[v] > 1) { u = v; break; }
        if (u < 0) {
            if (++emitted_ > opt_.limits.enumeration_cap && opt_.limits.enumeration_cap) {
                truncated_ = true;
                return false;
            }
            return visit(extract_min_map());
        }
        for (int value : domain_values(u)) {
            std::size_t m = mark();
            bool keep_going = true;
            if (assign(u, value)) keep_going = dfs_enumerate(visit);
            undo_to(m);
            if (!keep_going) return false;
        }
        return true;
    }

public:
    bool truncated() const { return truncated_; }

private:
    const Graph& g_;
    const Graph& h_;
    int n_, hn_, words_;
    HomOptions opt_;
    std::vector<std::uint64_t> hrow_, dom_;
    std::vector<int> domsize_;
    std::vector<std::uint64_t> trail_words_;
    std::vector<int> trail_var_, trail_size_;
    std::vector<std::uint64_t> support_;
    std::vector<int> queue_;
    std::vector<char> inqueue_;
    std::uint64_t nodes_ = 0, emitted_ = 0;
    bool truncated_ = false;
    std::optional<std::chrono::steady_clock::time_point> deadline_;
};

} // namespace

HomResult hom_backtrack(const Graph& source, const Graph& target, const HomOptions& opt) {
    HomResult res;
    Backtracker bt(source, target, opt);
    switch (opt.mode) {
    case HomMode::decide:
    case HomMode::find_one: {
        auto map = bt.find();
        res.decision = map.has_value();
        if (map) res.witness = Homomorphism{std::move(*map)};
        break;
    }
    case HomMode::count: {
        res.count = bt.count();
        res.decision = *res.count > 0;
        break;
    }
    case HomMode::enumerate: {
        bt.enumerate([&](const std::vector<int>& map) {
            res.all.push_back(Homomorphism{map});
            return true;
        });
        res.truncated = bt.truncated();
        res.decision = !res.all.empty();
        if (res.decision) res.witness = res.all.front();
        break;
    }
    }
    res.stats.nodes = bt.nodes();
    return res;
}

bool hom_enumerate(const Graph& source, const Graph& target, const HomOptions& opt,
                   const std::function<bool(const std::vector<int>&)>& visit,
                   SearchStats* stats) {
    HomOptions o = opt;
    o.mode = HomMode::enumerate;
    Backtracker bt(source, target, o);
    bool exhaustive = bt.enumerate(visit);
    if (stats) stats->nodes += bt.nodes();
    return exhaustive && !bt.truncated();
}

std::vector<int> constructible_set(const Graph& k, int x0,
                                   const std::vector<std::pair<int, int>>& pins, const Graph& h,
                                   const SearchLimits& limits) {
    if (x0 < 0 || x0 >= k.size())
        throw PreconditionError("constructible_set: x0 out of range");
    std::vector<int> out;
    for (int y = 0; y < h.size(); ++y) {
        HomOptions opt;
        opt.mode = HomMode::decide;
        opt.pins = pins;
        opt.pins.emplace_back(x0, y);
        opt.limits = limits;
        if (hom_backtrack(k, h, opt).decision) out.push_back(y);
    }
    return out;
}

} // namespace homtw

#include "homtw/graph.hpp"

#include "homtw/errors.hpp"
#include "homtw/experiments.hpp"
#include "homtw/invariants.hpp"
#include "homtw/isomorphism.hpp"
#include "homtw/named_graphs.hpp"

#include "test_helpers.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace homtw;

TEST_SUITE_BEGIN("graph");

TEST_CASE("build_graph basics") {
    Graph k3 = Graph::from_edges(3, {{0, 1}, {1, 2}, {2, 0}});
    CHECK(k3.size() == 3);
    CHECK(k3.edge_count() == 3);
    CHECK(k3.adjacent(0, 1));
    CHECK(k3.adjacent(1, 0));
    CHECK(!k3.has_any_loop());

    Graph k1star = Graph::from_edges(1, {{0, 0}});
    CHECK(k1star.size() == 1);
    CHECK(k1star.has_loop(0));
    CHECK(k1star.edge_count() == 1);

    Graph c4 = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    CHECK(bipartition(c4).has_value());

    CHECK_THROWS_AS(Graph::from_edges(2, {{0, 5}}), PreconditionError);

    // duplicate edges collapse
    Graph dup = Graph::from_edges(2, {{0, 1}, {1, 0}, {0, 1}});
    CHECK(dup.edge_count() == 1);
}

TEST_CASE("named graphs match their documented shapes") {
    Graph b = make_brinkmann();
    CHECK(b.size() == 21);
    CHECK(b.edge_count() == 42);
    for (int v = 0; v < b.size(); ++v) CHECK(b.degree(v) == 4);
    CHECK(is_connected(b));

    Graph gg = make_grotzsch();
    CHECK(gg.size() == 11);
    CHECK(gg.edge_count() == 20);

    Graph bow = make_bowtie();
    CHECK(bow.size() == 5);
    CHECK(bow.edge_count() == 6);
    CHECK(bow.degree(4) == 4); // shared vertex of the two triangles

    Graph ch = make_chvatal();
    CHECK(ch.size() == 12);
    CHECK(ch.edge_count() == 24);
    for (int v = 0; v < ch.size(); ++v) CHECK(ch.degree(v) == 4);

    Graph pet = make_petersen();
    CHECK(pet.size() == 10);
    CHECK(pet.edge_count() == 15);

    CHECK_THROWS_AS(named_graph("kneser:2,5"), ParseError);
    CHECK_THROWS_AS(named_graph("unknowngraph"), ParseError);
    CHECK(named_graph("clique:3").size() == 3);
    CHECK(named_graph("kneser:5,2").size() == 10);
}

TEST_CASE("direct product shapes") {
    Graph k3 = make_clique(3);
    Graph k1(1);
    Graph p = direct_product({k3, k1});
    CHECK(p.size() == 3);
    CHECK(p.edge_count() == 0); // K3 x K1: isolated vertices

    Graph k2 = make_clique(2);
    Graph kk = direct_product({k2, k2});
    CHECK(kk.size() == 4);
    CHECK(kk.edge_count() == 2);
    CHECK(!is_connected(kk)); // two disjoint edges

    Graph c5 = make_cycle(5);
    Graph kc = direct_product({k3, c5});
    CHECK(kc.size() == 15);
    for (int v = 0; v < kc.size(); ++v) CHECK(kc.degree(v) == 4);
    CHECK(is_connected(kc));

    // brute double-loop construction as the oracle
    Graph oracle(15);
    for (int x1 = 0; x1 < 3; ++x1)
        for (int y1 = 0; y1 < 5; ++y1)
            for (int x2 = 0; x2 < 3; ++x2)
                for (int y2 = 0; y2 < 5; ++y2)
                    if (k3.adjacent(x1, x2) && c5.adjacent(y1, y2))
                        oracle.add_edge(x1 * 5 + y1, x2 * 5 + y2);
    CHECK(oracle.edges() == kc.edges());

    CHECK_THROWS_AS(direct_product({k3, c5}, 10), LimitExceeded);
    CHECK_THROWS_AS(direct_product({}), PreconditionError);
}

TEST_CASE("product labels record coordinates and projections preserve edges") {
    std::mt19937_64 rng(42);
    for (int round = 0; round < 20; ++round) {
        Graph a = random_graph(rng, 1 + static_cast<int>(rng() % 5), 0.5, 0.1);
        Graph b = random_graph(rng, 1 + static_cast<int>(rng() % 5), 0.5, 0.1);
        Graph p = direct_product({a, b});
        REQUIRE(p.size() == a.size() * b.size());
        REQUIRE(p.has_labels());
        for (int v = 0; v < p.size(); ++v) {
            REQUIRE(p.labels()[v].size() == 2);
            CHECK(p.labels()[v][0] >= 0);
            CHECK(p.labels()[v][0] < a.size());
            CHECK(p.labels()[v][1] < b.size());
        }
        // each projection is a homomorphism, edge by edge
        for (auto [u, v] : p.edges()) {
            CHECK(a.adjacent(p.labels()[u][0], p.labels()[v][0]));
            CHECK(b.adjacent(p.labels()[u][1], p.labels()[v][1]));
        }
    }
}

TEST_CASE("single-factor product is isomorphic to the factor") {
    std::mt19937_64 rng(7);
    for (int round = 0; round < 10; ++round) {
        Graph a = random_graph(rng, 2 + static_cast<int>(rng() % 6), 0.4, 0.1);
        Graph p = direct_product({a});
        CHECK(isomorphic(a, p).has_value());
    }
}

TEST_CASE("invariants on the named corpus") {
    InvariantOptions opt;
    GraphInvariants b = invariants(make_brinkmann(), opt);
    CHECK(b.chi == 4);
    CHECK(b.odd_girth == 5);
    CHECK(b.connected);
    CHECK(b.ramified);
    CHECK(is_square_free(make_brinkmann()));

    GraphInvariants gg = invariants(make_grotzsch(), opt);
    CHECK(gg.omega == 2);
    CHECK(gg.chi == 4);
    CHECK(gg.odd_girth == 5);

    GraphInvariants p3 = invariants(make_path(3), opt);
    CHECK(!p3.ramified); // endpoint neighborhoods coincide
    CHECK(p3.bipartite);
    CHECK(!p3.odd_girth.has_value());

    GraphInvariants loop = invariants(make_k1star(), opt);
    CHECK(loop.odd_girth == 1);

    GraphInvariants ch = invariants(make_chvatal(), opt);
    CHECK(ch.omega == 2); // triangle-free
    CHECK(ch.chi == 4);
    CHECK(ch.odd_girth == 5);
}

TEST_CASE("invariants vs brute oracles on random graphs") {
    std::mt19937_64 rng(11);
    for (int round = 0; round < 40; ++round) {
        Graph g = random_graph(rng, 1 + static_cast<int>(rng() % 8), 0.45);
        GraphInvariants inv = invariants(g);
        CHECK(inv.omega <= inv.chi);
        CHECK(inv.chi == testing::brute_chromatic(g));
        CHECK(inv.bipartite == !inv.odd_girth.has_value());
        bool two_colorable = testing::brute_colorable(g, 2);
        CHECK(inv.bipartite == two_colorable);
    }
}

TEST_CASE("isomorphism on spec examples") {
    Graph c5 = make_cycle(5);
    Graph c5r = Graph::from_edges(5, {{3, 1}, {1, 4}, {4, 2}, {2, 0}, {0, 3}});
    auto iso = isomorphic(c5, c5r);
    REQUIRE(iso.has_value());
    for (auto [u, v] : c5.edges()) CHECK(c5r.adjacent((*iso)[u], (*iso)[v]));

    CHECK(!isomorphic(make_clique(3), make_path(3)).has_value());

    Graph a = direct_product({make_clique(3), make_cycle(5)});
    Graph b = direct_product({make_cycle(5), make_clique(3)});
    CHECK(isomorphic(a, b).has_value()); // commutativity up to isomorphism
}

TEST_CASE("isomorphism is reflexive and symmetric on random graphs") {
    std::mt19937_64 rng(13);
    for (int round = 0; round < 100; ++round) {
        Graph g = random_graph(rng, 1 + static_cast<int>(rng() % 8), 0.4, 0.1);
        auto self = isomorphic(g, g);
        REQUIRE(self.has_value());
        // permute and check both directions
        std::vector<int> perm(g.size());
        for (int i = 0; i < g.size(); ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        Graph h(g.size());
        for (auto [u, v] : g.edges()) h.add_edge(perm[u], perm[v]);
        CHECK(isomorphic(g, h).has_value());
        CHECK(isomorphic(h, g).has_value());
    }
}

TEST_CASE("disjoint union") {
    std::vector<int> comp;
    Graph u = disjoint_union({make_clique(3), make_grotzsch()}, &comp);
    CHECK(u.size() == 14);
    CHECK(connected_components(u).size() == 2);
    CHECK(comp[0] == 0);
    CHECK(comp[13] == 1);

    Graph two = disjoint_union({Graph(1), Graph(1)});
    CHECK(two.size() == 2);
    CHECK(two.edge_count() == 0);

    Graph cc = disjoint_union({make_cycle(5), make_cycle(5)});
    CHECK(cc.size() == 10);
    CHECK(connected_components(cc).size() == 2);
}

TEST_CASE("pace and dimacs digests are order independent") {
    Graph a = Graph::from_edges(4, {{0, 1}, {2, 3}, {1, 2}});
    Graph b = Graph::from_edges(4, {{1, 2}, {0, 1}, {2, 3}});
    CHECK(graph_digest(a) == graph_digest(b));
    Graph c = Graph::from_edges(4, {{0, 1}, {2, 3}});
    CHECK(graph_digest(a) != graph_digest(c));
}

TEST_SUITE_END();

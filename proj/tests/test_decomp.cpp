#include "homtw/decomposition.hpp"

#include "homtw/errors.hpp"
#include "homtw/experiments.hpp"
#include "homtw/named_graphs.hpp"
#include "homtw/pace_io.hpp"

#include <doctest.h>

#include <random>
#include <sstream>

using namespace homtw;

TEST_SUITE_BEGIN("decomp");

TEST_CASE("validate on the path examples") {
    Graph p4 = make_path(4);
    TreeDecomposition td;
    td.kind = TreeDecomposition::Kind::path;
    td.bags = {{0, 1}, {1, 2}, {2, 3}};
    td.edges = {{0, 1}, {1, 2}};
    auto rep = validate(p4, td);
    CHECK(rep.ok);
    CHECK(td.width() == 1);

    // removing the middle bag uncovers edge 1-2
    TreeDecomposition bad;
    bad.bags = {{0, 1}, {2, 3}};
    bad.edges = {{0, 1}};
    auto rep2 = validate(p4, bad);
    CHECK(!rep2.ok);
    CHECK(rep2.condition == "edge-coverage");
    CHECK(rep2.detail.find("1-2") != std::string::npos);
}

TEST_CASE("validate on a cycle decomposition") {
    Graph c5 = make_cycle(5);
    TreeDecomposition td;
    td.kind = TreeDecomposition::Kind::path;
    td.bags = {{0, 1, 4}, {1, 2, 4}, {2, 3, 4}};
    td.edges = {{0, 1}, {1, 2}};
    auto rep = validate(c5, td);
    CHECK(rep.ok);
    CHECK(td.width() == 2);
}

TEST_CASE("validate reports disconnected vertex occurrences") {
    Graph p3 = make_path(3);
    TreeDecomposition td;
    td.bags = {{0, 1}, {1, 2}, {0, 2}}; // vertex 0 in bags 0 and 2, not 1
    td.edges = {{0, 1}, {1, 2}};
    auto rep = validate(p3, td);
    CHECK(!rep.ok);
    CHECK(rep.condition == "connected-subtree");
}

TEST_CASE("to_nice preserves width and validates") {
    Graph k3 = make_clique(3);
    TreeDecomposition single;
    single.bags = {{0, 1, 2}};
    NiceDecomposition nd = to_nice(single);
    CHECK(nd.width == 2);
    CHECK(validate_nice(k3, nd).ok);

    Graph c5 = make_cycle(5);
    TreeDecomposition td;
    td.kind = TreeDecomposition::Kind::path;
    td.bags = {{0, 1, 4}, {1, 2, 4}, {2, 3, 4}};
    td.edges = {{0, 1}, {1, 2}};
    NiceDecomposition nd2 = to_nice(td);
    CHECK(nd2.width == 2);
    CHECK(validate_nice(c5, nd2).ok);

    Graph p3 = make_path(3);
    TreeDecomposition two;
    two.bags = {{0, 1}, {1, 2}};
    two.edges = {{0, 1}};
    NiceDecomposition nd3 = to_nice(two);
    CHECK(nd3.width == 1);
    CHECK(validate_nice(p3, nd3).ok);
}

TEST_CASE("to_nice on random decompositions keeps width and node budget") {
    std::mt19937_64 rng(5);
    for (int round = 0; round < 30; ++round) {
        Graph g = random_graph(rng, 2 + static_cast<int>(rng() % 9), 0.4);
        TreeDecomposition td = heuristic_decomposition(g);
        REQUIRE(validate(g, td).ok);
        NiceDecomposition nd = to_nice(td);
        CHECK(nd.width == td.width());
        CHECK(validate_nice(g, nd).ok);
        // O(width * nodes + n) with a generous constant
        int budget = 4 * ((td.width() + 2) * td.node_count() + g.size() + 4);
        CHECK(static_cast<int>(nd.nodes.size()) <= budget);
    }
}

TEST_CASE("heuristic widths on known families") {
    // trees have width 1
    std::mt19937_64 rng(17);
    for (int round = 0; round < 10; ++round) {
        int n = 2 + static_cast<int>(rng() % 10);
        Graph tree(n);
        for (int v = 1; v < n; ++v) tree.add_edge(v, static_cast<int>(rng() % v));
        TreeDecomposition td = heuristic_decomposition(tree);
        CHECK(validate(tree, td).ok);
        CHECK(td.width() == 1);
    }
    CHECK(heuristic_decomposition(make_clique(5)).width() == 4);
    CHECK(heuristic_decomposition(make_cycle(5)).width() == 2);
    CHECK(heuristic_decomposition(make_cycle(9)).width() == 2);
}

TEST_CASE("heuristic handles disconnected and degenerate graphs") {
    Graph iso(3); // no edges
    TreeDecomposition td = heuristic_decomposition(iso);
    CHECK(validate(iso, td).ok);

    Graph two = disjoint_union({make_clique(3), make_path(2)});
    TreeDecomposition td2 = heuristic_decomposition(two);
    CHECK(validate(two, td2).ok);

    Graph loop = Graph::from_edges(2, {{0, 0}, {0, 1}});
    TreeDecomposition td3 = heuristic_decomposition(loop);
    CHECK(validate(loop, td3).ok);
}

TEST_CASE("pace gr round trip") {
    Graph k3 = make_clique(3);
    std::ostringstream out;
    emit_pace_gr(k3, out);
    CHECK(out.str() == "p tw 3 3\n1 2\n1 3\n2 3\n");
    std::istringstream in(out.str());
    Graph back = parse_pace_gr(in);
    CHECK(back.edges() == k3.edges());

    // byte stability: emit(parse(emit(x))) == emit(x)
    std::ostringstream out2;
    emit_pace_gr(back, out2);
    CHECK(out.str() == out2.str());
}

TEST_CASE("pace td parse and emit") {
    std::istringstream in("c a comment\ns td 1 3 3\nb 1 1 2 3\n");
    int n = 0;
    TreeDecomposition td = parse_pace_td(in, &n);
    CHECK(n == 3);
    CHECK(td.node_count() == 1);
    CHECK(td.width() == 2);
    CHECK(validate(make_clique(3), td).ok);

    std::ostringstream out;
    emit_pace_td(td, 3, out);
    std::istringstream in2(out.str());
    TreeDecomposition back = parse_pace_td(in2);
    CHECK(back.bags == td.bags);
    std::ostringstream out2;
    emit_pace_td(back, 3, out2);
    CHECK(out.str() == out2.str());
}

TEST_CASE("pace parse errors carry positions") {
    std::istringstream bad_header("p tw x 3\n");
    CHECK_THROWS_AS(parse_pace_gr(bad_header), ParseError);
    std::istringstream out_of_range("s td 1 2 3\nb 1 1 9\n");
    CHECK_THROWS_AS(parse_pace_td(out_of_range), ParseError);
    std::istringstream bad_bag_id("s td 1 2 3\nb 7 1\n");
    CHECK_THROWS_AS(parse_pace_td(bad_bag_id), ParseError);
}

TEST_CASE("dimacs round trip with loops") {
    Graph g = Graph::from_edges(3, {{0, 0}, {0, 1}, {1, 2}});
    std::ostringstream out;
    emit_dimacs(g, out);
    CHECK(out.str() == "p edge 3 3\ne 1 1\ne 1 2\ne 2 3\n");
    std::istringstream in(out.str());
    Graph back = parse_dimacs(in);
    CHECK(back.edges() == g.edges());
    CHECK(back.has_loop(0));

    std::istringstream sniff(out.str());
    Graph auto_parsed = parse_graph_auto(sniff);
    CHECK(auto_parsed.edges() == g.edges());
}

TEST_CASE("heuristic output round trips through pace text") {
    std::mt19937_64 rng(23);
    for (int round = 0; round < 15; ++round) {
        Graph g = random_graph(rng, 2 + static_cast<int>(rng() % 8), 0.5);
        TreeDecomposition td = heuristic_decomposition(g);
        std::ostringstream o1;
        emit_pace_td(td, g.size(), o1);
        std::istringstream i1(o1.str());
        TreeDecomposition back = parse_pace_td(i1);
        CHECK(back.bags == td.bags);
        REQUIRE(back.edges.size() == td.edges.size());
        CHECK(validate(g, back).ok);
    }
}

TEST_SUITE_END();

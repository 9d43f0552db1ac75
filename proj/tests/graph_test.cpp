#include <doctest.h>

#include "pathlab/graph.hpp"

using namespace pathlab;

TEST_CASE("graph construction invariants") {
    auto g = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {0, 1}});
    CHECK(g.m() == 3); // duplicate collapsed
    CHECK(g.has_edge(1, 0));
    CHECK(!g.has_edge(0, 2));
    CHECK_THROWS_AS(Graph::from_edges(3, {{0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph::from_edges(3, {{0, 5}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph::from_edges(3, {}, std::vector<int>{1, 2}), std::invalid_argument);
}

TEST_CASE("edge list round trip with colors") {
    auto g = cycle_graph(5).with_colors({1, 2, 3, 4, 5});
    auto text = save_edge_list(g);
    auto h = load_edge_list(text);
    CHECK(h.n() == 5);
    CHECK(h.m() == 5);
    CHECK(h.colored());
    CHECK(h.color(3) == 4);
}

TEST_CASE("edge list parse errors carry line numbers") {
    CHECK_THROWS_WITH_AS(load_edge_list("3 1\n0 9\n"), doctest::Contains("line 2"), ParseError);
    CHECK_THROWS_WITH_AS(load_edge_list("3 2\n0 1\n"), doctest::Contains("mismatch"), ParseError);
    CHECK_THROWS_AS(load_edge_list("x\n"), ParseError);
    CHECK_THROWS_AS(load_edge_list("3 1\n1 1\n"), ParseError);
}

TEST_CASE("gnp determinism per seed") {
    auto a = random_gnp(30, 0.2, 7);
    auto b = random_gnp(30, 0.2, 7);
    auto c = random_gnp(30, 0.2, 8);
    CHECK(save_edge_list(a) == save_edge_list(b));
    CHECK(save_edge_list(a) != save_edge_list(c));
}

TEST_CASE("cograph generator is connected") {
    for (uint64_t s = 0; s < 10; ++s) {
        auto g = random_cograph(20, s);
        CHECK(g.connected());
    }
}

TEST_CASE("join and union arithmetic") {
    auto j = graph_join(complete_graph(2), path_graph(3));
    CHECK(j.n() == 5);
    CHECK(j.m() == 1 + 2 + 6);
    auto u = graph_union(complete_graph(2), path_graph(3));
    CHECK(u.m() == 3);
    CHECK(!u.connected());
}

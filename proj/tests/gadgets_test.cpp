#include <doctest.h>

#include <map>
#include <set>

#include "pathlab/gadgets.hpp"

using namespace pathlab;
using namespace pathlab::gadget;

namespace {

std::vector<int> bits_of(uint32_t v, int len) {
    std::vector<int> b(len);
    for (int i = 0; i < len; ++i) b[i] = (v >> i) & 1;
    return b;
}

} // namespace

TEST_CASE("disjointness") {
    CHECK(disj({0, 1, 0, 1}, {0, 0, 1, 0}) == 1);
    CHECK(disj({0, 1, 0, 1}, {0, 1, 0, 0}) == 0);
    CHECK_THROWS_AS(disj({1}, {1, 0}), std::invalid_argument);
}

TEST_CASE("the d=1 family: exhaustive iff at n=2") {
    for (uint32_t xv = 0; xv < 16; ++xv)
        for (uint32_t yv = 0; yv < 16; ++yv) {
            auto x = bits_of(xv, 4), y = bits_of(yv, 4);
            auto gg = build_p11(x, y, 2);
            CHECK(gg.graph.n() == 15);
            auto chk = verify_gadget(gg, x, y, {});
            CHECK(chk.conclusive);
            CHECK(chk.pass);
        }
}

TEST_CASE("the d=1 family: structure") {
    auto gg = build_p11(bits_of(0, 4), bits_of(0, 4), 2);
    CHECK(gg.cut_size() == 4); // 2n matching edges
    CHECK(gg.k_target == 11);
    CHECK_THROWS_AS(build_p11({1, 0}, {0, 1}, 2), std::invalid_argument);
}

TEST_CASE("flipping a 0-bit to 1 never adds edges in the d=1 family") {
    Rng rng(5);
    for (int t = 0; t < 20; ++t) {
        std::vector<int> x(4), y(4);
        for (auto& b : x) b = rng.coin(0.5);
        for (auto& b : y) b = rng.coin(0.5);
        auto base = build_p11(x, y, 2);
        for (int i = 0; i < 4; ++i) {
            if (x[i] == 1) continue;
            auto x2 = x;
            x2[i] = 1;
            CHECK(build_p11(x2, y, 2).graph.m() < base.graph.m());
        }
    }
}

TEST_CASE("ordered 5-path family: exhaustive iff at n=2") {
    for (uint32_t xv = 0; xv < 16; ++xv)
        for (uint32_t yv = 0; yv < 16; ++yv) {
            auto x = bits_of(xv, 4), y = bits_of(yv, 4);
            auto gg = build_ordered_p5(x, y, 2);
            auto chk = verify_gadget(gg, x, y, {});
            CHECK(chk.conclusive);
            CHECK(chk.pass);
        }
    auto gg = build_ordered_p5(bits_of(15, 4), bits_of(15, 4), 2);
    CHECK(gg.cut_size() == 4); // the 2n matching edges only
    CHECK(gg.ordered);
}

TEST_CASE("three-party family over a triangle base") {
    Graph base = Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
    std::vector<int> parts = {0, 1, 2};
    CHECK(induced_path_exists(build_nof_p5({1}, {1}, {1}, base, parts), 5) == Verdict::kYes);
    CHECK(induced_path_exists(build_nof_p5({1}, {0}, {1}, base, parts), 5) == Verdict::kNo);
    CHECK(induced_path_exists(build_nof_p5({0}, {1}, {1}, base, parts), 5) == Verdict::kNo);
    CHECK(induced_path_exists(build_nof_p5({1}, {1}, {0}, base, parts), 5) == Verdict::kNo);
    // a clique is not an edge-disjoint triangle packing
    CHECK_THROWS_AS(validate_triangle_packing(complete_graph(4), {0, 1, 2, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(validate_triangle_packing(base, {0, 0, 1}), std::invalid_argument);
    // two-triangle base: bits act per triangle
    Graph base2 = Graph::from_edges(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
    std::vector<int> parts2 = {0, 1, 2, 0, 1, 2};
    CHECK(induced_path_exists(build_nof_p5({0, 1}, {1, 1}, {1, 1}, base2, parts2), 5) ==
          Verdict::kYes);
    CHECK(induced_path_exists(build_nof_p5({0, 1}, {1, 0}, {1, 1}, base2, parts2), 5) ==
          Verdict::kNo);
}

TEST_CASE("locality lengthening") {
    Graph base = Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
    std::vector<int> parts = {0, 1, 2};
    auto gg = build_nof_p5_gadget({1}, {1}, {1}, base, parts);
    auto same = lengthen_for_locality(gg, 0);
    CHECK(same.graph.n() == gg.graph.n());
    auto l1 = lengthen_for_locality(gg, 1);
    CHECK(l1.k_target == 9);
    CHECK(induced_path_exists(l1.graph, 9) == Verdict::kYes);
    auto l2 = lengthen_for_locality(gg, 2);
    CHECK(l2.k_target == 13);
    CHECK(induced_path_exists(l2.graph, 13) == Verdict::kYes);
    CHECK_THROWS_AS(lengthen_for_locality(build_p11(bits_of(0, 4), bits_of(0, 4), 2), 1),
                    std::invalid_argument);
}

TEST_CASE("the d=2 family at n=4") {
    std::vector<int> zeros(16, 0), ones(16, 1);
    auto gg = build_p22(zeros, zeros, 4);
    CHECK(gg.graph.n() == 70);
    CHECK(gg.k_target == 22);
    CHECK(gg.cut_size() == 8); // 4 sqrt(n) matching edges
    CHECK_THROWS_AS(build_p22(zeros, zeros, 5), std::invalid_argument);

    SUBCASE("pinned cases") {
        auto c0 = verify_gadget(gg, zeros, zeros, {.max_seconds = 30});
        CHECK(c0.conclusive);
        CHECK(c0.pass); // disjoint, free
        auto g1 = build_p22(ones, zeros, 4);
        auto c1 = verify_gadget(g1, ones, zeros, {.max_seconds = 30});
        CHECK(c1.conclusive);
        CHECK(c1.pass); // disjoint, free
    }
    SUBCASE("every single shared bit creates the canonical witness") {
        for (int b = 0; b < 16; ++b) {
            std::vector<int> x(16, 0), y(16, 0);
            x[b] = y[b] = 1;
            auto g2 = build_p22(x, y, 4);
            auto w = find_witness_path(g2, x, y);
            REQUIRE(static_cast<int>(w.size()) == 22);
            CHECK(p22_witness_shape_ok(g2, w));
        }
    }
    SUBCASE("lengthened gadget keeps the stretched witness") {
        std::vector<int> x(16, 0), y(16, 0);
        x[5] = y[5] = 1;
        auto g2 = build_p22(x, y, 4);
        auto lg = lengthen_for_locality(g2, 1);
        CHECK(lg.k_target == 34);
        auto w = find_witness_path(lg, x, y);
        CHECK(static_cast<int>(w.size()) == lg.k_target);
    }
}

TEST_CASE("the d>=3 family at d=3, n=8") {
    std::vector<int> zeros(64, 0);
    auto gg = build_p8d(zeros, zeros, 8, 3);
    CHECK(gg.graph.n() == 120);
    CHECK(gg.k_target == 24);
    CHECK(gg.cut_size() == 12); // 2 d n^(1/d)
    CHECK_THROWS_AS(build_p8d(zeros, zeros, 7, 3), std::invalid_argument);
    CHECK_THROWS_AS(build_p8d(zeros, zeros, 8, 2), std::invalid_argument);

    auto c0 = verify_gadget(gg, zeros, zeros, {.max_seconds = 30});
    CHECK(c0.conclusive);
    CHECK(c0.pass);

    std::vector<int> x(64, 0), y(64, 0);
    x[9] = y[9] = 1;
    auto g1 = build_p8d(x, y, 8, 3);
    auto w = find_witness_path(g1, x, y);
    REQUIRE(static_cast<int>(w.size()) == 24);
    // the witness uses exactly d nodes from each of the eight sets
    std::map<int, int> per_range;
    for (int v : w) per_range[v / 24]++; // block sets are 24 ids each; rows start at 96
    auto c1 = verify_gadget(g1, x, y, {.max_seconds = 30});
    CHECK(c1.conclusive);
    CHECK(c1.pass);
}

TEST_CASE("code rows distinguish blocks") {
    std::vector<int> zeros(64, 0);
    auto gg = build_p8d(zeros, zeros, 8, 3);
    // Code(A1^i) differs across blocks: compare U_A adjacency of block columns
    auto code_of = [&](int block) {
        std::set<int> code;
        for (int t = 0; t < 3; ++t)
            for (int w : gg.graph.neighbors((block - 1) * 3 + t))
                if (w >= 4 * 24 && w < 4 * 24 + 6) code.insert(w);
        return code;
    };
    for (int i = 1; i <= 8; ++i)
        for (int j = i + 1; j <= 8; ++j) CHECK(code_of(i) != code_of(j));
}

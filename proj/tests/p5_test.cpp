#include <doctest.h>

#include <set>

#include "pathlab/enumerate.hpp"
#include "pathlab/p5.hpp"

using namespace pathlab;
using p5::Edge;
using p5::make_edge;

namespace {

// bad-edge template: r=0; layer 1 holds four plain guards 1..4 and a shared
// contact 5; u=6, v=7 carry the bad edge; t=9 links the guards to z=8
Graph fbad_template() {
    return Graph::from_edges(10, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5},
                                  {6, 5}, {7, 5}, {6, 7},
                                  {9, 1}, {9, 2}, {9, 3}, {9, 4}, {9, 5},
                                  {8, 9}});
}

uint64_t count_p5_subsets(const Graph& g) {
    return count_induced_copies_mask(g, canon5_of(path_graph(5)));
}

} // namespace

TEST_CASE("branch selection") {
    p5::P5Config cfg;
    cfg.seed = 11;
    auto a = p5::decide_p5_free(path_graph(5), cfg);
    CHECK(!a.accept);
    CHECK(a.branch == "diam>=4");
    auto b = p5::decide_p5_free(complete_graph(6), cfg);
    CHECK(b.accept);
    CHECK(b.branch == "clique");
    auto c = p5::decide_p5_free(cycle_graph(5), cfg);
    CHECK(c.accept);
    CHECK(c.branch == "sparse");
    auto d = p5::decide_p5_free(petersen_graph(), cfg);
    CHECK(!d.accept);
    CHECK(d.diameter == 2);
    CHECK(p5::decide_p5_free(path_graph(4), cfg).branch == "trivial");
}

TEST_CASE("forced-dense pipelines agree with the oracle") {
    p5::P5Config dense;
    dense.seed = 29;
    dense.sparse_constant = 0.0;
    auto a = p5::decide_p5_free(petersen_graph(), dense);
    CHECK(!a.accept);
    CHECK(a.branch == "diam2");
    auto b = p5::decide_p5_free(cycle_graph(5), dense);
    CHECK(b.accept);
    CHECK(b.branch == "diam2");
    int idx = 0, mismatches = 0;
    for (const auto& g : connected_graph_classes(6)) {
        bool oracle_free = induced_path_exists(g, std::min(5, g.n())) == Verdict::kNo;
        p5::P5Config cfg;
        cfg.seed = 300 + idx++;
        cfg.sparse_constant = 0.0;
        auto dec = p5::decide_p5_free(g, cfg);
        if (dec.aborted || dec.accept != oracle_free) ++mismatches;
    }
    CHECK(mismatches == 0);
}

TEST_CASE("exhaustive agreement with the oracle up to 7 nodes") {
    int idx = 0, mismatches = 0;
    for (int n = 1; n <= 7; ++n)
        for (const auto& g : connected_graph_classes(n)) {
            bool oracle_free = n < 5 || induced_path_exists(g, 5) == Verdict::kNo;
            p5::P5Config cfg;
            cfg.seed = 100 + idx++;
            if (p5::decide_p5_free_majority(g, cfg) != oracle_free) ++mismatches;
        }
    CHECK(mismatches == 0);
}

TEST_CASE("collection rejects imply an induced 5-path") {
    int idx = 0;
    for (const auto& g : connected_graph_classes(7)) {
        if (diameter(g) != 3) continue;
        p5::P5Config cfg;
        cfg.seed = 900 + idx++;
        cfg.sparse_constant = 0.0;
        auto st = p5::p_collect(g, cfg);
        REQUIRE(!st.aborted);
        if (st.rejected) {
            CHECK(st.reject_condition >= 1);
            CHECK(st.reject_condition <= 4);
            CHECK(induced_path_exists(g, 5) == Verdict::kYes);
        }
    }
}

TEST_CASE("no internal or cross edges means everything reaches the root") {
    // the 4-path: one layer per node, no layer-2/layer-3 internal edges
    auto g = path_graph(4);
    p5::P5Config cfg;
    cfg.seed = 4;
    cfg.sparse_constant = 0.0;
    auto st = p5::p_collect(g, cfg);
    REQUIRE(!st.rejected);
    CHECK(st.fbad.empty());
    CHECK(st.e33.empty());
    CHECK(static_cast<int>(st.edges_at_r.size()) == g.m());
}

TEST_CASE("the hand-built bad edge is classified and excluded from the root's view") {
    auto g = fbad_template();
    REQUIRE(diameter(g) == 3);
    p5::P5Config cfg;
    cfg.seed = 5;
    cfg.sparse_constant = 0.0;
    auto st = p5::p_collect(g, cfg);
    REQUIRE(!st.rejected);
    REQUIRE(!st.aborted);
    CHECK(st.fbad == std::set<Edge>{make_edge(6, 7)});
    CHECK(st.edges_at_r.size() == static_cast<size_t>(g.m() - 1));
    CHECK(!st.edges_at_r.count(make_edge(6, 7)));
    // bad-edge endpoints satisfy the structural properties
    for (const Edge& e : st.fbad) {
        auto v1_of = [&](int u) {
            std::vector<int> out;
            for (int w : g.neighbors(u))
                if (st.layer[w] == 1) out.push_back(w);
            return out;
        };
        CHECK(v1_of(e.first) == v1_of(e.second));
        for (int endpoint : {e.first, e.second})
            for (int w : g.neighbors(endpoint)) CHECK(st.layer[w] != 3);
    }
}

TEST_CASE("special-path detection fires exactly when such a path exists") {
    int idx = 0, checked = 0;
    for (const auto& g : connected_graph_classes(7)) {
        if (diameter(g) != 3) continue;
        p5::P5Config cfg;
        cfg.seed = 1300 + idx++;
        cfg.sparse_constant = 0.0;
        auto st = p5::p_collect(g, cfg);
        if (st.rejected || st.aborted) continue;
        if (st.fbad.empty() && st.e33.empty()) continue;
        ++checked;
        // central truth: an induced 5-path using a special edge
        std::vector<std::pair<int, int>> specials;
        for (auto& e : st.fbad) specials.push_back(e);
        for (auto& e : st.e33) specials.push_back(e);
        bool truth = g.n() >= 5 &&
                     induced_path_with_edge_exists(g, 5, specials) == Verdict::kYes;
        auto det = p5::detect_special_paths(g, st);
        if (truth) CHECK(det.found);
        if (det.found) CHECK(induced_path_exists(g, 5) == Verdict::kYes); // sound
    }
    CHECK(checked > 0);
}

TEST_CASE("dangerous counting matches the central identity") {
    int idx = 0, checked = 0;
    for (const auto& g : connected_graph_classes(7)) {
        if (diameter(g) != 3) continue;
        p5::P5Config cfg;
        cfg.seed = 1700 + idx++;
        cfg.sparse_constant = 0.0;
        auto st = p5::p_collect(g, cfg);
        if (st.rejected || st.aborted) continue;
        auto det = p5::detect_special_paths(g, st);
        if (det.found) continue;
        auto cnt = p5::count_dangerous(g, st, cfg);
        CHECK(!cnt.non_catalog_dangerous);
        // identity: t = #P5(E minus specials) - #P5 in G avoiding specials
        std::set<Edge> keep;
        for (auto [u, v] : g.edges()) {
            Edge e = make_edge(u, v);
            if (!st.fbad.count(e) && !st.e33.count(e)) keep.insert(e);
        }
        Graph reduced = Graph::from_edges(
            g.n(), std::vector<std::pair<int, int>>(keep.begin(), keep.end()));
        uint64_t in_reduced = count_p5_subsets(reduced);
        uint64_t avoiding = 0;
        int nodes[5];
        for (nodes[0] = 0; nodes[0] < g.n() - 4; ++nodes[0])
            for (nodes[1] = nodes[0] + 1; nodes[1] < g.n() - 3; ++nodes[1])
                for (nodes[2] = nodes[1] + 1; nodes[2] < g.n() - 2; ++nodes[2])
                    for (nodes[3] = nodes[2] + 1; nodes[3] < g.n() - 1; ++nodes[3])
                        for (nodes[4] = nodes[3] + 1; nodes[4] < g.n(); ++nodes[4]) {
                            if (canon5(g.induced_mask5(nodes)) != canon5_of(path_graph(5)))
                                continue;
                            bool uses = false;
                            for (int i = 0; i < 5; ++i)
                                for (int j = i + 1; j < 5; ++j) {
                                    if (!g.has_edge(nodes[i], nodes[j])) continue;
                                    Edge e = make_edge(nodes[i], nodes[j]);
                                    if (st.fbad.count(e) || st.e33.count(e)) uses = true;
                                }
                            if (!uses) ++avoiding;
                        }
        CHECK(cnt.t == in_reduced - avoiding);
        ++checked;
    }
    CHECK(checked > 50);
}

TEST_CASE("round usage stays within the headline bound") {
    for (uint64_t s = 0; s < 3; ++s) {
        auto g = random_connected_gnp(64, 0.3, 800 + s);
        p5::P5Config cfg;
        cfg.seed = s;
        auto d = p5::decide_p5_free(g, cfg);
        double bound = 500.0 * g.n() * id_bits(g.n()) * id_bits(g.n());
        CHECK(static_cast<double>(d.transcript.rounds_used) <= bound);
        CHECK(d.transcript.violations.empty());
    }
}

TEST_CASE("partition resample aborts after bounded retries") {
    p5::P5Config cfg;
    cfg.seed = 6;
    cfg.sparse_constant = 0.0;
    cfg.pair_bound_scale = 1e-9; // every draw over the bound
    auto g = fbad_template();
    auto st = p5::p_collect(g, cfg);
    CHECK(st.aborted);
}

TEST_CASE("bad edges satisfy all four structural properties") {
    int idx = 0, fbad_edges = 0;
    for (const auto& g : connected_graph_classes(7)) {
        if (diameter(g) != 3) continue;
        p5::P5Config cfg;
        cfg.seed = mix64(2500, idx++);
        cfg.sparse_constant = 0.0;
        auto st = p5::p_collect(g, cfg);
        if (st.rejected || st.aborted) continue;
        auto v1_of = [&](int u) {
            std::set<int> out;
            for (int w : g.neighbors(u))
                if (st.layer[w] == 1) out.insert(w);
            return out;
        };
        for (const Edge& e : st.fbad) {
            ++fbad_edges;
            auto t1 = v1_of(e.first);
            CHECK(t1 == v1_of(e.second)); // shared layer-1 neighborhood
            // no reach to the pair's label node
            int i = std::min(st.group[e.first], st.group[e.second]);
            int j = std::max(st.group[e.first], st.group[e.second]);
            int vk = st.labels[static_cast<size_t>(i + (j - 1) * st.groups)];
            if (vk >= 0)
                for (int endpoint : {e.first, e.second})
                    for (int w : g.neighbors(endpoint)) CHECK(!g.has_edge(w, vk));
            // no layer-3 contact, and every layer-2 contact covers the shared set
            for (int endpoint : {e.first, e.second})
                for (int w : g.neighbors(endpoint)) {
                    CHECK(st.layer[w] != 3);
                    if (st.layer[w] == 2)
                        for (int y : t1) CHECK((y == w || g.has_edge(y, w)));
                }
        }
    }
    CHECK(fbad_edges > 0);
}

TEST_CASE("deep internal path with a common relay is detected") {
    // root 0 with six guards and three contacts; every contact joins all
    // guards and the relay 10, which carries a five-node layer-3 path 11..15
    std::vector<std::pair<int, int>> e;
    for (int i = 1; i <= 9; ++i) e.push_back({0, i});
    for (int c = 7; c <= 9; ++c) {
        for (int i = 1; i <= 6; ++i) e.push_back({c, i});
        e.push_back({c, 10});
    }
    for (int p = 11; p <= 15; ++p) e.push_back({10, p});
    for (int p = 11; p <= 14; ++p) e.push_back({p, p + 1});
    Graph g = Graph::from_edges(16, e);
    REQUIRE(diameter(g) == 3);
    REQUIRE(induced_path_exists(g, 5) == Verdict::kYes);

    p5::P5Config cfg;
    cfg.seed = 77;
    cfg.sparse_constant = 0.0;
    auto st = p5::p_collect(g, cfg);
    REQUIRE(!st.rejected);
    REQUIRE(!st.aborted);
    CHECK(st.e33.size() == 4); // the four path edges sit below layer 2
    auto det = p5::detect_special_paths(g, st);
    CHECK(det.found);
    // the relay seeing the whole path is among the detectors
    bool relay_detects = false;
    for (int v : det.detectors)
        if (v == 10) relay_detects = true;
    CHECK(relay_detects);
    // and the full decision rejects
    auto d = p5::decide_p5_free(g, cfg);
    CHECK(!d.accept);
}

TEST_CASE("diameter-2 procedure handles degenerate shapes") {
    p5::P5Config cfg;
    cfg.seed = 13;
    // complete graph: no layer-2 nodes at all
    auto k6 = p5::decide_diameter2(complete_graph(6), cfg);
    CHECK(k6.accept);
    // star: layer 2 empty as well, every edge incident to the hub
    auto s8 = p5::decide_diameter2(star_graph(8), cfg);
    CHECK(s8.accept);
    // two-level tree has diameter 4: the caller filters it, but the
    // procedure itself still terminates and rejects on its local view
    auto c5 = p5::decide_diameter2(cycle_graph(5), cfg);
    CHECK(c5.accept);
}

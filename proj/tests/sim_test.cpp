#include <doctest.h>

#include "pathlab/oracles.hpp"
#include "pathlab/protocols.hpp"

using namespace pathlab;
using namespace pathlab::sim;

namespace {

struct Echo : NodeProgram {
    int id = -1;
    int width = 4;
    bool sent = false;
    void init(const LocalView& v) override {
        id = v.id;
        width = id_bits(v.n);
    }
    void step(int64_t, const Inbox&, Outbox& out) override {
        if (!sent) {
            Message m;
            m.add(static_cast<uint64_t>(id), width);
            out.broadcast(std::move(m));
            sent = true;
        }
    }
    bool done() const override { return sent; }
};

struct Oversender : NodeProgram {
    bool sent = false;
    void init(const LocalView&) override {}
    void step(int64_t, const Inbox&, Outbox& out) override {
        if (!sent) {
            Message m;
            m.add(0, 60); // over any small bandwidth
            out.broadcast(std::move(m));
            sent = true;
        }
    }
    bool done() const override { return sent; }
};

NetworkConfig broadcast_cfg(uint64_t seed = 1) {
    NetworkConfig cfg;
    cfg.mode = Mode::kBroadcast;
    cfg.seed = seed;
    return cfg;
}

} // namespace

TEST_CASE("echo on the triangle: one round, six directed messages") {
    auto t = run([](int) { return std::make_unique<Echo>(); }, complete_graph(3), broadcast_cfg());
    CHECK(t.rounds_used == 1);
    CHECK(t.total_messages == 6);
    CHECK(t.violations.empty());
}

TEST_CASE("bandwidth below a node id is rejected at validation") {
    NetworkConfig cfg;
    cfg.bandwidth_bits = 2;
    CHECK_THROWS_AS(cfg.validate(100), std::invalid_argument);
    cfg.bandwidth_bits = 7;
    CHECK_NOTHROW(cfg.validate(100));
}

TEST_CASE("oversized message aborts with a violation record") {
    NetworkConfig cfg = broadcast_cfg();
    cfg.bandwidth_bits = 8;
    auto t = run([](int) { return std::make_unique<Oversender>(); }, complete_graph(3), cfg);
    CHECK(t.aborted);
    REQUIRE(!t.violations.empty());
    CHECK(t.violations[0].kind == "bandwidth");
    CHECK(t.violations[0].bits == 60);
}

TEST_CASE("neighbor list dissemination on the 8-leaf star takes max-degree rounds") {
    auto r = exchange_neighbor_lists(star_graph(8), broadcast_cfg());
    CHECK(r.transcript.rounds_used == 8);
    // leaves learned the center's full list
    CHECK(r.lists[1][0].size() == 8);
}

TEST_CASE("pipelined dissemination bounds and content") {
    auto c6 = cycle_graph(6);
    std::vector<std::vector<uint64_t>> items(6);
    for (int u = 0; u < 6; ++u) items[u] = {static_cast<uint64_t>(c6.degree(u))};
    auto r = pipeline_broadcast(c6, items, 8, broadcast_cfg());
    CHECK(!r.transcript.timed_out);
    CHECK(r.transcript.rounds_used <= 3 + 6); // D + total tokens
    for (int u = 0; u < 6; ++u) CHECK(r.known[u].size() == 6);

    std::vector<std::vector<uint64_t>> empty(6);
    auto r2 = pipeline_broadcast(c6, empty, 8, broadcast_cfg());
    CHECK(r2.transcript.rounds_used == 0);

    // neighbor lists on K4: every node reconstructs the full graph
    auto k4 = complete_graph(4);
    std::vector<std::vector<uint64_t>> lists(4);
    for (int u = 0; u < 4; ++u)
        for (int v : k4.neighbors(u)) lists[u].push_back(static_cast<uint64_t>(v));
    auto r3 = pipeline_broadcast(k4, lists, 2, broadcast_cfg());
    for (int u = 0; u < 4; ++u) CHECK(r3.known[u].size() == 12);

    // disconnected input is reported as a timeout
    auto two = Graph::from_edges(4, {{0, 1}, {2, 3}});
    std::vector<std::vector<uint64_t>> one(4);
    one[0] = {7};
    auto r4 = pipeline_broadcast(two, one, 4, broadcast_cfg());
    CHECK(r4.transcript.timed_out);
}

TEST_CASE("convergecast computes exact sums within depth rounds") {
    NetworkConfig cfg;
    cfg.seed = 3;
    auto p6 = path_graph(6);
    auto tree = bfs_tree(p6, 0);
    std::vector<uint64_t> ones(6, 1);
    auto r = convergecast_sum(p6, tree, ones, 8, cfg);
    CHECK(r.root_sum == 6);
    CHECK(r.transcript.rounds_used <= tree.height);

    std::vector<uint64_t> zeros(6, 0);
    CHECK(convergecast_sum(p6, tree, zeros, 8, cfg).root_sum == 0);

    // random values in [0, n^3] against the direct sum
    Rng rng(11);
    auto g = random_connected_gnp(24, 0.2, 5);
    auto t2 = bfs_tree(g, 3);
    std::vector<uint64_t> vals(24);
    uint64_t want = 0;
    for (auto& v : vals) {
        v = rng.below(24ull * 24 * 24);
        want += v;
    }
    NetworkConfig wide;
    wide.seed = 4;
    wide.bandwidth_coeff = 5;
    CHECK(convergecast_sum(g, t2, vals, 20, wide).root_sum == want);

    // exceeding the declared budget is a configuration error
    std::vector<uint64_t> big(6, 200);
    CHECK_THROWS_AS(convergecast_sum(p6, tree, big, 8, cfg), std::invalid_argument);
}

TEST_CASE("distributed diameter equals the oracle") {
    NetworkConfig cfg;
    cfg.seed = 9;
    for (uint64_t s = 0; s < 5; ++s) {
        auto g = random_connected_gnp(30, 0.2, 40 + s);
        auto r = distributed_diameter(g, cfg);
        CHECK(r.diameter == pathlab::diameter(g));
        CHECK(r.transcript.rounds_used <= 3 * g.n());
    }
    CHECK(distributed_diameter(path_graph(4), cfg).diameter == 3);
    CHECK(distributed_diameter(complete_graph(5), cfg).diameter == 1);
}

TEST_CASE("identical configuration yields byte-identical transcripts") {
    auto g = random_connected_gnp(20, 0.3, 77);
    NetworkConfig cfg;
    cfg.seed = 12;
    auto a = all_bfs_waves(g, cfg);
    auto b = all_bfs_waves(g, cfg);
    CHECK(a.transcript.to_json().dump() == b.transcript.to_json().dump());
    CHECK(a.transcript.content_hash == b.transcript.content_hash);
}

namespace {

// flood the running minimum for a fixed number of rounds; every received
// message influences the next outbox, so a dropped message shows up in the
// round hashes immediately after the drop
struct MinFlood : NodeProgram {
    int rounds, best = 0, width = 8;
    int64_t last = 0;
    void init(const LocalView& v) override {
        best = v.id;
        width = id_bits(v.n);
    }
    void step(int64_t round, const Inbox& inbox, Outbox& out) override {
        inbox.for_each([&](int, const Message& m) {
            best = std::min(best, static_cast<int>(m.at(0)));
        });
        if (round <= rounds) {
            Message m;
            m.add(static_cast<uint64_t>(best), width);
            out.broadcast(std::move(m));
        }
        last = round;
    }
    bool done() const override { return last > rounds; }
};

} // namespace

TEST_CASE("deleting one message never diverges before the deletion round") {
    auto g = random_connected_gnp(12, 0.3, 5);
    NetworkConfig cfg = broadcast_cfg(2);
    auto factory = [](int) {
        auto p = std::make_unique<MinFlood>();
        p->rounds = 6;
        return p;
    };
    auto base = run(factory, g, cfg);
    REQUIRE(base.rounds_used == 6);
    for (int64_t round : {int64_t{1}, int64_t{3}, int64_t{5}}) {
        DropSpec drop;
        drop.round = round;
        drop.from = 4;
        drop.to = g.neighbors(4)[0];
        auto dropped = run(factory, g, cfg, &drop);
        // outbox content may only change after the deletion round
        for (int64_t r = 0; r < round && r < static_cast<int64_t>(base.round_hashes.size()); ++r)
            CHECK(base.round_hashes[static_cast<size_t>(r)] ==
                  dropped.round_hashes[static_cast<size_t>(r)]);
        CHECK(base.content_hash != dropped.content_hash);
    }
}

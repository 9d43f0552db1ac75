#pragma once

#include <string>
#include <vector>

#include "pathlab/protocols.hpp"

namespace pathlab::p4 {

struct Depth2Tree {
    int root = -1;
    std::vector<int> parent; // -1 for root
    std::vector<int> depth;  // 0, 1, 2
    int max_children_depth1 = 0;
};

struct P4Config {
    uint64_t seed = 0;
    int64_t round_limit = 100000;
    // reject when a depth-1 node exceeds this many children; 0 = derive
    // 4*ln(n)/ln(ln(n)) + 4
    int fanout_threshold = 0;
    // broadcast messages carry (origin, parent, degree, fingerprint); the
    // fingerprint field gets a floor width so small instances keep a large
    // field
    int min_field_bits = 30;

    sim::NetworkConfig net(int n) const {
        sim::NetworkConfig cfg;
        cfg.mode = sim::Mode::kBroadcast;
        cfg.seed = seed;
        cfg.round_limit = round_limit;
        cfg.bandwidth_bits = 3 * id_bits(n) + std::max(3 * id_bits(n), min_field_bits) + 2;
        return cfg;
    }
    int fanout(int n) const;
};

struct TreeResult {
    bool rejected = false;
    std::string reason;
    Depth2Tree tree;
    sim::Transcript transcript;
};

// Constant-round diameter screen, max-degree root election, and the
// randomized depth-2 spanning tree. Rejection certifies the graph is not a
// connected cograph.
TreeResult build_depth2_tree(const Graph& g, const P4Config& cfg);

struct RefereeResult {
    bool accept = false; // accept = cograph
    bool collision = false;
    sim::Transcript transcript;
};

// Every node emits a degree + linear-fingerprint sketch; sketches flow to
// the root through the tree; the root runs twin elimination on the sketches
// and accepts iff one class remains.
RefereeResult sketch_and_refer(const Graph& g, const Depth2Tree& tree, const P4Config& cfg);

struct P4Decision {
    bool accept = false; // accept = P4-free
    std::string branch;  // "trivial", "tree-reject:...", "referee"
    bool tree_built = false;
    Depth2Tree tree;
    sim::Transcript transcript;
};

P4Decision decide_p4_free(const Graph& g, const P4Config& cfg);

// Majority over `runs` seeds derived from cfg.seed.
bool decide_p4_free_majority(const Graph& g, const P4Config& cfg, int runs = 3);

} // namespace pathlab::p4

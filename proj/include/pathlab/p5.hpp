#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "pathlab/oracles.hpp"
#include "pathlab/protocols.hpp"

namespace pathlab::p5 {

using Edge = std::pair<int, int>; // normalized u < v

inline Edge make_edge(int u, int v) { return u < v ? Edge{u, v} : Edge{v, u}; }

struct P5Config {
    uint64_t seed = 0;
    int64_t round_limit = 4000000;
    // sparse fallback when m <= sparse_constant * n * ln(n)^2; natural log
    double sparse_constant = 400.0;
    int partition_retries = 3;
    // test hook: per-pair edge bound multiplier (default the 6 p^2 m bound)
    double pair_bound_scale = 1.0;

    sim::NetworkConfig net(int n) const {
        sim::NetworkConfig cfg;
        cfg.mode = sim::Mode::kUnicast;
        cfg.seed = seed;
        cfg.round_limit = round_limit;
        cfg.bandwidth_coeff = 4;
        return cfg;
    }
};

// Output of the collection pipeline on diameter-3 graphs.
struct CollectState {
    bool rejected = false;
    int reject_condition = 0; // 1..4
    bool aborted = false;     // partition retries exhausted
    int root = -1;
    int groups = 1;                // s
    std::vector<int> group;        // 1..s per node
    std::vector<int> layer;        // distance to root, 0..3
    std::vector<int> labels;       // labels[k] = node id of v_k, -1 if unused; index 1..s^2
    std::set<Edge> tilde22, fbad, e33;
    std::set<Edge> edges_at_r;     // what the root knows after routing
    // step-1 knowledge: lists[u][i] = sorted neighbor list of g.neighbors(u)[i]
    std::vector<std::vector<std::vector<int>>> nbr_lists;
    sim::Transcript transcript;
};

CollectState p_collect(const Graph& g, const P5Config& cfg);

// Adjacency as seen by one node; exact only inside its 2-ball.
class AdjacencySource {
public:
    virtual ~AdjacencySource() = default;
    virtual const std::vector<int>& neighbors(int u) const = 0; // u in N[self]
    virtual bool edge(int a, int b) const = 0;                  // a or b in N[self]
};

class GraphSource : public AdjacencySource {
public:
    explicit GraphSource(const Graph& g) : g_(g) {}
    const std::vector<int>& neighbors(int u) const override { return g_.neighbors(u); }
    bool edge(int a, int b) const override { return g_.has_edge(a, b); }

private:
    const Graph& g_;
};

// Local knowledge of one node after the collection phase: its 2-ball from
// step 1, the global layer/group maps, and the special-edge classes of edges
// incident to its closed neighborhood. The detection and certification
// verifiers both evaluate on this view only.
class NodeView {
public:
    NodeView(int self, const AdjacencySource& adj, const std::vector<int>& layer,
             const std::set<Edge>& fbad, const std::set<Edge>& e33);

    int self() const { return self_; }
    enum Status { kUnknown = -1, kNonEdge = 0, kEdge = 1 };
    // direct knowledge: exact when either endpoint is in N[self]
    Status direct(int a, int b) const;
    // direct knowledge extended by the structural consequences of clean
    // collection (V1-neighborhood equality, no V3 neighbors, V2 closure)
    Status infer(int a, int b) const;
    bool knows_special(int a, int b) const; // edge class visible to self
    const std::vector<Edge>& known_specials() const { return known_specials_; }
    // candidate universe: closed neighborhood plus the 2-ball
    const std::vector<int>& universe() const { return universe_; }
    bool in_ball1(int x) const { return ball1_.count(x) > 0; }

private:
    int self_;
    const AdjacencySource& adj_;
    const std::vector<int>& layer_;
    const std::set<Edge>& fbad_;
    const std::set<Edge>& e33_;
    std::set<int> ball1_;
    std::vector<int> universe_;
    std::vector<Edge> known_specials_;
};

// One node's search for an induced 5-path using at least one special edge it
// can see, grown from certified facts only.
bool node_detects_special_path(const NodeView& view);

struct DetectResult {
    bool found = false;
    std::vector<int> detectors;
};

// Per-node search for an induced 5-path that uses at least one special edge,
// from each node's own knowledge. No communication rounds.
DetectResult detect_special_paths(const Graph& g, const CollectState& st);

struct CountResult {
    uint64_t t = 0;
    std::vector<uint64_t> per_pattern;  // aligned with pattern_catalog()
    std::vector<uint64_t> per_node;     // designated-counter totals
    bool non_catalog_dangerous = false; // a dangerous subset outside the catalog
    sim::Transcript transcript;         // the convergecast rounds
};

CountResult count_dangerous(const Graph& g, const CollectState& st, const P5Config& cfg);

// counting core without the convergecast rounds
struct DangerousCounts {
    uint64_t t = 0;
    std::vector<uint64_t> per_pattern;
    std::vector<std::vector<uint64_t>> per_node_pattern; // [pattern][node]
    bool non_catalog = false;
};
DangerousCounts count_dangerous_core(const Graph& g, const std::vector<int>& layer,
                                     const std::set<Edge>& fbad, const std::set<Edge>& e33);

// marked / bad classification of the layer-2 internal edges for a given
// partition and labeling; cond2_fired reports an inequality of layer-1
// neighborhoods across an unmarked edge
struct EdgeClasses {
    std::set<Edge> tilde22, fbad, e33;
    bool cond2_fired = false;
    std::map<Edge, std::pair<bool, bool>> cond1_flags; // per layer-2 internal edge
};
EdgeClasses classify_edges(const Graph& g, const std::vector<int>& layer,
                           const std::vector<int>& group, int groups,
                           const std::vector<int>& labels);

struct P5Decision {
    bool accept = false;
    bool aborted = false;
    std::string branch; // trivial | diam>=4 | clique | sparse | diam2 | diam3
    uint64_t t = 0;
    uint64_t local_count = 0;
    int diameter = -1;
    sim::Transcript transcript;
};

P5Decision decide_diameter2(const Graph& g, const P5Config& cfg);
P5Decision decide_p5_free(const Graph& g, const P5Config& cfg);
bool decide_p5_free_majority(const Graph& g, const P5Config& cfg, int runs = 3);

nlohmann::json decision_json(const P5Decision& d);

} // namespace pathlab::p5

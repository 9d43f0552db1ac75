#pragma once

#include <optional>
#include <vector>

#include "pathlab/sim.hpp"

namespace pathlab::sim {

struct RootedTree {
    int root = 0;
    std::vector<int> parent;   // -1 at the root
    std::vector<int> depth_of; // exact BFS depth
    int height = 0;
};

// Exact shortest-path tree; parents are the minimum-id neighbor one level up.
RootedTree bfs_tree(const Graph& g, int root);

struct PipelineResult {
    Transcript transcript;
    // known[u] = every (origin, payload) pair u holds after the run
    std::vector<std::vector<std::pair<int, uint64_t>>> known;
};

// Flooding with per-edge pipelining: every node ends up holding every
// (origin, token) pair. Quiescence with missing tokens (disconnected input)
// is reported as a timeout.
PipelineResult pipeline_broadcast(const Graph& g, const std::vector<std::vector<uint64_t>>& items,
                                  int payload_bits, const NetworkConfig& cfg);

struct ConvergecastResult {
    Transcript transcript;
    uint64_t root_sum = 0;
};

// Tree-directed aggregation of values toward the root. The declared
// value_bits must accommodate the full sum.
ConvergecastResult convergecast_sum(const Graph& g, const RootedTree& tree,
                                    const std::vector<uint64_t>& values, int value_bits,
                                    const NetworkConfig& cfg);

// One node list token per round to all neighbors; after the run every node
// holds the neighbor list of each of its neighbors.
struct NeighborExchangeResult {
    Transcript transcript;
    // lists[u] aligned with g.neighbors(u)
    std::vector<std::vector<std::vector<int>>> lists;
};
NeighborExchangeResult exchange_neighbor_lists(const Graph& g, const NetworkConfig& cfg);

// Pipelined BFS waves from every node, smallest-estimate-first with resend on
// improvement. dist[u][s] is exact at quiescence.
struct BfsWavesResult {
    Transcript transcript;
    std::vector<std::vector<int>> dist; // dist[u][s], -1 unreachable
    std::vector<int> ecc;               // -1 when some node is unreachable
    bool connected = true;
};
BfsWavesResult all_bfs_waves(const Graph& g, const NetworkConfig& cfg);

struct DiameterResult {
    Transcript transcript;
    std::optional<int> diameter; // nullopt marks disconnected
};
DiameterResult distributed_diameter(const Graph& g, const NetworkConfig& cfg);

// (degree, id) maximum flood for a fixed number of rounds. The result is
// exact when `rounds` covers the eccentricity of the winner; `unanimous`
// reports whether all nodes agree.
struct ElectionResult {
    Transcript transcript;
    int root = -1;
    int root_degree = -1;
    bool unanimous = true;
};
ElectionResult elect_max_degree(const Graph& g, int rounds, const NetworkConfig& cfg);

} // namespace pathlab::sim

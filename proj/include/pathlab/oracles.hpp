#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pathlab/graph.hpp"

namespace pathlab {

enum class Verdict { kYes, kNo, kBudget };

struct OracleBudget {
    uint64_t max_steps = UINT64_MAX; // backtracking expansions
    double max_seconds = 0.0;        // 0 = no wall-clock cap
};

// True iff g contains an induced path on k nodes. Backtracking over partial
// induced paths: extend only by neighbors of the last node that are
// non-adjacent to all earlier path nodes. kBudget when the budget runs out
// before a witness or a full refutation.
Verdict induced_path_exists(const Graph& g, int k, const OracleBudget& budget = {});

// Same decision restricted to paths that contain at least one edge from
// `required`, given as a per-node bitset of special-edge adjacency pairs.
// Used by the five-node analyses and kept here next to the plain oracle.
Verdict induced_path_with_edge_exists(const Graph& g, int k,
                                      const std::vector<std::pair<int, int>>& required_edges,
                                      const OracleBudget& budget = {});

// First witness path found, if any (serial search).
std::optional<std::vector<int>> find_induced_path(const Graph& g, int k,
                                                  const OracleBudget& budget = {});

// Number of 5-node subsets of g whose induced subgraph is isomorphic to the
// 5-node pattern (unordered subsets, one count per subset).
uint64_t count_induced_copies(const Graph& g, const Graph& pattern5);
uint64_t count_induced_copies_mask(const Graph& g, uint16_t pattern_canon);

// True iff there is an induced path p1..pk with color(p_i) = i (colors 1..k).
bool ordered_induced_path_exists(const Graph& g, int k);

// Exact diameter via all-sources BFS; nullopt marks a disconnected graph.
std::optional<int> diameter(const Graph& g);

// Single-source BFS distances; -1 for unreachable nodes.
std::vector<int> bfs_distances(const Graph& g, int source);

bool induced_c4_exists(const Graph& g);

// Canonical form of a 5-node adjacency mask: minimum over all 120 vertex
// permutations.
uint16_t canon5(uint16_t mask);
uint16_t canon5_of(const Graph& pattern5);
// True iff the 5-node graph given by mask has a Hamiltonian path.
bool traceable5(uint16_t mask);

struct PatternCatalog {
    std::vector<uint16_t> patterns; // canonical masks, sorted
    int index_of(uint16_t canon) const;
    Graph pattern_graph(int index) const;
};

// All non-isomorphic 5-node graphs that contain a 5-node path as a (not
// necessarily induced) subgraph. Exactly 16 patterns.
const PatternCatalog& pattern_catalog();

// Serial reference implementations kept for testing and benchmarking the
// OpenMP kernels above.
namespace ref {
Verdict induced_path_exists(const Graph& g, int k, const OracleBudget& budget = {});
uint64_t count_induced_copies(const Graph& g, const Graph& pattern5);
std::optional<int> diameter(const Graph& g);
bool induced_c4_exists(const Graph& g);
} // namespace ref

} // namespace pathlab

#pragma once

#include <cstdint>
#include <vector>

#include "pathlab/graph.hpp"

namespace pathlab {

// Canonical key for graphs on up to 8 nodes: the lexicographically maximal
// placement bitstring over all vertex orderings, packed into 64 bits.
uint64_t canonical_key8(const Graph& g);

// One representative per isomorphism class of graphs on exactly n nodes
// (n <= 8). Cached after the first call.
const std::vector<Graph>& graph_classes(int n);
const std::vector<Graph>& connected_graph_classes(int n);

} // namespace pathlab

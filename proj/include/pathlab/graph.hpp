#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pathlab/bits.hpp"

namespace pathlab {

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

// Immutable undirected simple graph with optional node coloring.
// Node ids are 0..n-1; adjacency lists are sorted; no self-loops.
class Graph {
public:
    Graph() = default;

    static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges,
                            std::optional<std::vector<int>> colors = std::nullopt);

    int n() const { return n_; }
    int m() const { return m_; }
    const std::vector<int>& neighbors(int u) const { return adj_[u]; }
    int degree(int u) const { return static_cast<int>(adj_[u].size()); }

    bool has_edge(int u, int v) const {
        return (bits_[static_cast<size_t>(u) * words_ + static_cast<size_t>(v >> 6)] >>
                (v & 63)) & 1;
    }

    // Row of the adjacency bitset, words() 64-bit words per row.
    const uint64_t* row(int u) const { return &bits_[static_cast<size_t>(u) * words_]; }
    size_t words() const { return words_; }

    std::vector<std::pair<int, int>> edges() const;

    bool colored() const { return colors_.has_value(); }
    int color(int u) const { return (*colors_)[u]; }
    const std::optional<std::vector<int>>& colors() const { return colors_; }
    Graph with_colors(std::vector<int> colors) const;

    bool connected() const;

    // 10-bit upper-triangle adjacency mask of the subgraph induced by 5 nodes
    uint16_t induced_mask5(const int* nodes) const;

private:
    int n_ = 0;
    int m_ = 0;
    size_t words_ = 0;
    std::vector<std::vector<int>> adj_;
    std::vector<uint64_t> bits_;
    std::optional<std::vector<int>> colors_;
};

// Generators. All are deterministic per seed.
Graph path_graph(int n);
Graph cycle_graph(int n);
Graph complete_graph(int n);
Graph star_graph(int leaves);
Graph complete_bipartite(int a, int b);
Graph petersen_graph();
Graph random_gnp(int n, double p, uint64_t seed);
Graph random_connected_gnp(int n, double p, uint64_t seed);
// Random cograph built by the single-node / union / join grammar; connected
// (the root operation is a join).
Graph random_cograph(int n, uint64_t seed);

Graph graph_union(const Graph& a, const Graph& b);
Graph graph_join(const Graph& a, const Graph& b);
// Adds one node adjacent to everything.
Graph add_universal_vertex(const Graph& g);
Graph relabel(const Graph& g, const std::vector<int>& perm);

// Edge-list text format: first line "n m", then m lines "u v" with 0-based
// ids; optional "c u color" lines for colorings.
std::string save_edge_list(const Graph& g);
Graph load_edge_list(const std::string& text);
Graph load_edge_list_file(const std::string& path);
void save_edge_list_file(const Graph& g, const std::string& path);

} // namespace pathlab

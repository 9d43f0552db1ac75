#include "pathlab/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace pathlab {

Graph Graph::from_edges(int n, const std::vector<std::pair<int, int>>& edges,
                        std::optional<std::vector<int>> colors) {
    if (n <= 0) throw std::invalid_argument("Graph: node count must be positive");
    Graph g;
    g.n_ = n;
    g.words_ = static_cast<size_t>((n + 63) / 64);
    g.adj_.assign(n, {});
    g.bits_.assign(static_cast<size_t>(n) * g.words_, 0);
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw std::invalid_argument("Graph: edge endpoint out of range");
        if (u == v) throw std::invalid_argument("Graph: self-loop");
        if (g.has_edge(u, v)) continue;
        g.bits_[static_cast<size_t>(u) * g.words_ + (v >> 6)] |= 1ULL << (v & 63);
        g.bits_[static_cast<size_t>(v) * g.words_ + (u >> 6)] |= 1ULL << (u & 63);
        g.adj_[u].push_back(v);
        g.adj_[v].push_back(u);
        ++g.m_;
    }
    for (auto& nb : g.adj_) std::sort(nb.begin(), nb.end());
    if (colors) {
        if (static_cast<int>(colors->size()) != n)
            throw std::invalid_argument("Graph: colors must cover all nodes");
        g.colors_ = std::move(colors);
    }
    return g;
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(m_);
    for (int u = 0; u < n_; ++u)
        for (int v : adj_[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

Graph Graph::with_colors(std::vector<int> colors) const {
    return from_edges(n_, edges(), std::move(colors));
}

bool Graph::connected() const {
    if (n_ == 0) return false;
    std::vector<int> stack = {0};
    std::vector<char> seen(n_, 0);
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : adj_[u])
            if (!seen[v]) {
                seen[v] = 1;
                ++count;
                stack.push_back(v);
            }
    }
    return count == n_;
}

uint16_t Graph::induced_mask5(const int* nodes) const {
    uint16_t mask = 0;
    int bit = 0;
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j, ++bit)
            if (has_edge(nodes[i], nodes[j])) mask |= static_cast<uint16_t>(1u << bit);
    return mask;
}

Graph path_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return Graph::from_edges(n, e);
}

Graph cycle_graph(int n) {
    if (n < 3) throw std::invalid_argument("cycle_graph: need n >= 3");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return Graph::from_edges(n, e);
}

Graph complete_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return Graph::from_edges(n, e);
}

Graph star_graph(int leaves) {
    std::vector<std::pair<int, int>> e;
    for (int i = 1; i <= leaves; ++i) e.emplace_back(0, i);
    return Graph::from_edges(leaves + 1, e);
}

Graph complete_bipartite(int a, int b) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) e.emplace_back(i, a + j);
    return Graph::from_edges(a + b, e);
}

Graph petersen_graph() {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < 5; ++i) {
        e.emplace_back(i, (i + 1) % 5);        // outer cycle
        e.emplace_back(5 + i, 5 + (i + 2) % 5); // inner pentagram
        e.emplace_back(i, 5 + i);               // spokes
    }
    return Graph::from_edges(10, e);
}

Graph random_gnp(int n, double p, uint64_t seed) {
    Rng rng(seed);
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.coin(p)) e.emplace_back(i, j);
    return Graph::from_edges(n, e);
}

Graph random_connected_gnp(int n, double p, uint64_t seed) {
    for (uint64_t attempt = 0;; ++attempt) {
        Graph g = random_gnp(n, p, mix64(seed, attempt));
        if (g.connected()) return g;
        if (attempt > 10000)
            throw std::runtime_error("random_connected_gnp: rejection sampling failed");
    }
}

namespace {

Graph random_cotree(int n, Rng& rng, bool force_join) {
    if (n == 1) return Graph::from_edges(1, {});
    int left = static_cast<int>(rng.range(1, n - 1));
    Graph a = random_cotree(left, rng, false);
    Graph b = random_cotree(n - left, rng, false);
    bool join = force_join || rng.coin(0.5);
    return join ? graph_join(a, b) : graph_union(a, b);
}

} // namespace

Graph random_cograph(int n, uint64_t seed) {
    Rng rng(seed);
    return random_cotree(n, rng, true);
}

Graph graph_union(const Graph& a, const Graph& b) {
    std::vector<std::pair<int, int>> e = a.edges();
    for (auto [u, v] : b.edges()) e.emplace_back(a.n() + u, a.n() + v);
    return Graph::from_edges(a.n() + b.n(), e);
}

Graph graph_join(const Graph& a, const Graph& b) {
    std::vector<std::pair<int, int>> e = a.edges();
    for (auto [u, v] : b.edges()) e.emplace_back(a.n() + u, a.n() + v);
    for (int u = 0; u < a.n(); ++u)
        for (int v = 0; v < b.n(); ++v) e.emplace_back(u, a.n() + v);
    return Graph::from_edges(a.n() + b.n(), e);
}

Graph add_universal_vertex(const Graph& g) {
    std::vector<std::pair<int, int>> e = g.edges();
    for (int u = 0; u < g.n(); ++u) e.emplace_back(u, g.n());
    return Graph::from_edges(g.n() + 1, e);
}

Graph relabel(const Graph& g, const std::vector<int>& perm) {
    std::vector<std::pair<int, int>> e;
    for (auto [u, v] : g.edges()) e.emplace_back(perm[u], perm[v]);
    std::optional<std::vector<int>> colors;
    if (g.colored()) {
        colors = std::vector<int>(g.n());
        for (int u = 0; u < g.n(); ++u) (*colors)[perm[u]] = g.color(u);
    }
    return Graph::from_edges(g.n(), e, std::move(colors));
}

std::string save_edge_list(const Graph& g) {
    std::ostringstream out;
    out << g.n() << ' ' << g.m() << '\n';
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
    if (g.colored())
        for (int u = 0; u < g.n(); ++u) out << "c " << u << ' ' << g.color(u) << '\n';
    return out.str();
}

Graph load_edge_list(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    int n = -1, m = -1;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::pair<int, int>> color_entries;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (n < 0) {
            try {
                n = std::stoi(first);
            } catch (...) {
                throw ParseError(lineno, "expected node count");
            }
            if (!(ls >> m)) throw ParseError(lineno, "expected \"n m\" header");
            if (n <= 0) throw ParseError(lineno, "node count must be positive");
            if (m < 0) throw ParseError(lineno, "edge count must be non-negative");
            continue;
        }
        if (first == "c") {
            int u, c;
            if (!(ls >> u >> c)) throw ParseError(lineno, "expected \"c u color\"");
            if (u < 0 || u >= n) throw ParseError(lineno, "color node out of range");
            color_entries.emplace_back(u, c);
            continue;
        }
        int u, v;
        try {
            u = std::stoi(first);
        } catch (...) {
            throw ParseError(lineno, "expected edge \"u v\"");
        }
        if (!(ls >> v)) throw ParseError(lineno, "expected edge \"u v\"");
        if (u < 0 || v < 0 || u >= n || v >= n) throw ParseError(lineno, "edge endpoint out of range");
        if (u == v) throw ParseError(lineno, "self-loop");
        edges.emplace_back(u, v);
    }
    if (n < 0) throw ParseError(lineno, "empty input");
    if (static_cast<int>(edges.size()) != m)
        throw ParseError(lineno, "edge count mismatch: header says " + std::to_string(m) +
                                     ", found " + std::to_string(edges.size()));
    std::optional<std::vector<int>> colors;
    if (!color_entries.empty()) {
        if (static_cast<int>(color_entries.size()) != n)
            throw ParseError(lineno, "colors must cover all nodes");
        colors = std::vector<int>(n, -1);
        for (auto [u, c] : color_entries) (*colors)[u] = c;
    }
    return Graph::from_edges(n, edges, std::move(colors));
}

Graph load_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_edge_list(buf.str());
}

void save_edge_list_file(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << save_edge_list(g);
}

} // namespace pathlab

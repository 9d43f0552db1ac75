#include "pathlab/enumerate.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <stdexcept>

namespace pathlab {

namespace {

// Adjacency rows of a graph on <= 8 nodes, one bitmask per vertex.
using Rows = std::array<uint8_t, 8>;

// Finds the lexicographically maximal sequence of placement rows, where the
// row at depth d is the adjacency pattern of the newly placed vertex against
// placed[0..d-1] (placed[0] as most significant bit). Any prefix extends to a
// complete ordering, so the running best can be committed per depth.
struct CanonSearch {
    int n;
    const Rows& rows;
    std::array<int, 8> best;   // best row value per depth, -1 = unknown
    std::array<int, 8> placed;

    CanonSearch(int n_, const Rows& rows_) : n(n_), rows(rows_) {
        best.fill(-1);
    }

    int row_value(int v, int depth) const {
        int r = 0;
        for (int j = 0; j < depth; ++j)
            r = (r << 1) | ((rows[v] >> placed[j]) & 1);
        return r;
    }

    void dfs(int depth, uint8_t used) {
        if (depth == n) return;
        // candidates sorted by row value, descending
        std::array<std::pair<int, int>, 8> cand;
        int cnt = 0;
        for (int v = 0; v < n; ++v)
            if (!((used >> v) & 1)) cand[cnt++] = {row_value(v, depth), v};
        std::sort(cand.begin(), cand.begin() + cnt, std::greater<>());
        for (int i = 0; i < cnt; ++i) {
            auto [r, v] = cand[i];
            if (depth > 0) {
                if (r < best[depth]) return; // all remaining candidates are worse
                if (r > best[depth]) {
                    best[depth] = r;
                    for (int d = depth + 1; d < n; ++d) best[d] = -1;
                }
            }
            placed[depth] = v;
            dfs(depth + 1, static_cast<uint8_t>(used | (1u << v)));
        }
    }

    uint64_t run() {
        dfs(0, 0);
        uint64_t key = static_cast<uint64_t>(n);
        for (int d = 1; d < n; ++d) key = (key << d) | static_cast<uint64_t>(best[d]);
        return key;
    }
};

uint64_t canonical_key(int n, const Rows& rows) { return CanonSearch(n, rows).run(); }

Graph rows_to_graph(int n, const Rows& rows) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if ((rows[i] >> j) & 1) e.emplace_back(i, j);
    return Graph::from_edges(n, e);
}

Graph key_to_graph(int n, uint64_t key) {
    Rows rows{};
    for (int d = n - 1; d >= 1; --d) {
        int r = static_cast<int>(key & ((1u << d) - 1));
        key >>= d;
        for (int j = 0; j < d; ++j)
            if ((r >> (d - 1 - j)) & 1) {
                rows[d] |= static_cast<uint8_t>(1u << j);
                rows[j] |= static_cast<uint8_t>(1u << d);
            }
    }
    return rows_to_graph(n, rows);
}

std::vector<uint64_t> class_keys(int n) {
    if (n == 1) return {canonical_key(1, Rows{})};
    std::vector<uint64_t> prev = class_keys(n - 1);
    std::set<uint64_t> out;
    for (uint64_t pk : prev) {
        Graph pg = key_to_graph(n - 1, pk);
        Rows rows{};
        for (auto [u, v] : pg.edges()) {
            rows[u] |= static_cast<uint8_t>(1u << v);
            rows[v] |= static_cast<uint8_t>(1u << u);
        }
        for (uint32_t nb = 0; nb < (1u << (n - 1)); ++nb) {
            Rows r = rows;
            r[n - 1] = static_cast<uint8_t>(nb);
            for (int j = 0; j < n - 1; ++j)
                if ((nb >> j) & 1) r[j] |= static_cast<uint8_t>(1u << (n - 1));
            out.insert(canonical_key(n, r));
        }
    }
    return {out.begin(), out.end()};
}

} // namespace

uint64_t canonical_key8(const Graph& g) {
    if (g.n() > 8) throw std::invalid_argument("canonical_key8: graph too large");
    Rows rows{};
    for (auto [u, v] : g.edges()) {
        rows[u] |= static_cast<uint8_t>(1u << v);
        rows[v] |= static_cast<uint8_t>(1u << u);
    }
    return canonical_key(g.n(), rows);
}

const std::vector<Graph>& graph_classes(int n) {
    if (n < 1 || n > 8) throw std::invalid_argument("graph_classes: n must be in [1, 8]");
    static std::array<std::vector<Graph>, 9> cache;
    if (cache[n].empty())
        for (uint64_t key : class_keys(n)) cache[n].push_back(key_to_graph(n, key));
    return cache[n];
}

const std::vector<Graph>& connected_graph_classes(int n) {
    static std::array<std::vector<Graph>, 9> cache;
    if (n < 1 || n > 8) throw std::invalid_argument("connected_graph_classes: n must be in [1, 8]");
    if (cache[n].empty())
        for (const Graph& g : graph_classes(n))
            if (g.connected()) cache[n].push_back(g);
    return cache[n];
}

} // namespace pathlab

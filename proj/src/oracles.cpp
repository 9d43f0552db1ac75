#include "pathlab/oracles.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstring>
#include <functional>
#include <numeric>
#include <set>
#include <unordered_map>

namespace pathlab {

namespace {

using Clock = std::chrono::steady_clock;

struct SearchLimits {
    uint64_t max_steps;
    Clock::time_point deadline;
    bool has_deadline;
};

SearchLimits make_limits(const OracleBudget& b) {
    SearchLimits l;
    l.max_steps = b.max_steps;
    l.has_deadline = b.max_seconds > 0;
    if (l.has_deadline)
        l.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                        std::chrono::duration<double>(b.max_seconds));
    return l;
}

struct PathSearch {
    const Graph& g;
    size_t words;
    int k;
    const SearchLimits& limits;
    std::vector<uint64_t> blocked; // per depth: path nodes + neighborhoods of p_0..p_{len-2}
    std::vector<int> path;
    uint64_t steps = 0;
    bool budget_hit = false;

    PathSearch(const Graph& g_, int k_, const SearchLimits& limits_)
        : g(g_), words(g_.words()), k(k_), limits(limits_) {
        blocked.assign(static_cast<size_t>(k + 1) * words, 0);
        path.reserve(k);
    }

    bool out_of_budget() {
        if (++steps >= limits.max_steps) return budget_hit = true;
        if (limits.has_deadline && (steps & 0xfff) == 0 && Clock::now() > limits.deadline)
            return budget_hit = true;
        return false;
    }

    // blocked[len] covers all constraints for choosing path[len].
    bool extend() {
        int len = static_cast<int>(path.size());
        if (len == k) return true;
        if (out_of_budget()) return false;
        int last = path.back();
        const uint64_t* nb = g.row(last);
        const uint64_t* blk = &blocked[static_cast<size_t>(len) * words];
        uint64_t* nxt = &blocked[static_cast<size_t>(len + 1) * words];
        for (size_t w = 0; w < words; ++w) {
            uint64_t cand = nb[w] & ~blk[w];
            while (cand) {
                int c = static_cast<int>(w * 64 + static_cast<size_t>(std::countr_zero(cand)));
                cand &= cand - 1;
                // new blocked set: previous constraints + N(last) + {c}
                for (size_t x = 0; x < words; ++x) nxt[x] = blk[x] | nb[x];
                nxt[static_cast<size_t>(c) >> 6] |= 1ULL << (c & 63);
                path.push_back(c);
                if (extend()) return true;
                path.pop_back();
                if (budget_hit) return false;
            }
        }
        return false;
    }

    // Search all induced k-paths starting at s.
    bool from(int s) {
        path.clear();
        path.push_back(s);
        uint64_t* blk = &blocked[1 * words];
        std::memset(blk, 0, words * 8);
        blk[static_cast<size_t>(s) >> 6] |= 1ULL << (s & 63);
        return extend();
    }
};

Verdict path_exists_impl(const Graph& g, int k, const OracleBudget& budget, bool parallel) {
    if (k < 1 || k > g.n()) throw std::invalid_argument("induced_path_exists: k out of range");
    if (k == 1) return Verdict::kYes;
    SearchLimits limits = make_limits(budget);
    if (!parallel) {
        PathSearch s(g, k, limits);
        for (int v = 0; v < g.n(); ++v)
            if (s.from(v)) return Verdict::kYes;
        return s.budget_hit ? Verdict::kBudget : Verdict::kNo;
    }
    std::atomic<bool> found{false}, over{false};
#pragma omp parallel
    {
        PathSearch s(g, k, limits);
#pragma omp for schedule(dynamic)
        for (int v = 0; v < g.n(); ++v) {
            if (found.load(std::memory_order_relaxed) || over.load(std::memory_order_relaxed))
                continue;
            if (s.from(v)) found.store(true, std::memory_order_relaxed);
            if (s.budget_hit) over.store(true, std::memory_order_relaxed);
        }
    }
    if (found) return Verdict::kYes;
    return over ? Verdict::kBudget : Verdict::kNo;
}

} // namespace

Verdict induced_path_exists(const Graph& g, int k, const OracleBudget& budget) {
    return path_exists_impl(g, k, budget, true);
}

std::optional<std::vector<int>> find_induced_path(const Graph& g, int k,
                                                  const OracleBudget& budget) {
    if (k < 1 || k > g.n()) throw std::invalid_argument("find_induced_path: k out of range");
    if (k == 1) return std::vector<int>{0};
    SearchLimits limits = make_limits(budget);
    PathSearch s(g, k, limits);
    for (int v = 0; v < g.n(); ++v)
        if (s.from(v)) return s.path;
    return std::nullopt;
}

Verdict ref::induced_path_exists(const Graph& g, int k, const OracleBudget& budget) {
    return path_exists_impl(g, k, budget, false);
}

Verdict induced_path_with_edge_exists(const Graph& g, int k,
                                      const std::vector<std::pair<int, int>>& required_edges,
                                      const OracleBudget& budget) {
    if (k < 2 || k > g.n())
        throw std::invalid_argument("induced_path_with_edge_exists: k out of range");
    if (required_edges.empty()) return Verdict::kNo;
    std::set<std::pair<int, int>> req;
    for (auto [u, v] : required_edges) req.insert({std::min(u, v), std::max(u, v)});

    SearchLimits limits = make_limits(budget);
    struct Search : PathSearch {
        const std::set<std::pair<int, int>>& req;
        Search(const Graph& g_, int k_, const SearchLimits& l, const std::set<std::pair<int, int>>& r)
            : PathSearch(g_, k_, l), req(r) {}
        bool uses_required() const {
            for (size_t i = 0; i + 1 < path.size(); ++i) {
                auto e = std::minmax(path[i], path[i + 1]);
                if (req.count({e.first, e.second})) return true;
            }
            return false;
        }
        bool extend2() {
            int len = static_cast<int>(path.size());
            if (len == k) return uses_required();
            if (out_of_budget()) return false;
            int last = path.back();
            const uint64_t* nb = g.row(last);
            const uint64_t* blk = &blocked[static_cast<size_t>(len) * words];
            uint64_t* nxt = &blocked[static_cast<size_t>(len + 1) * words];
            for (size_t w = 0; w < words; ++w) {
                uint64_t cand = nb[w] & ~blk[w];
                while (cand) {
                    int c = static_cast<int>(w * 64 + static_cast<size_t>(std::countr_zero(cand)));
                    cand &= cand - 1;
                    std::vector<uint64_t> saved(nxt, nxt + words);
                    for (size_t x = 0; x < words; ++x) nxt[x] = blk[x] | nb[x];
                    nxt[static_cast<size_t>(c) >> 6] |= 1ULL << (c & 63);
                    path.push_back(c);
                    bool ok = extend2();
                    path.pop_back();
                    std::copy(saved.begin(), saved.end(), nxt);
                    if (ok) return true;
                    if (budget_hit) return false;
                }
            }
            return false;
        }
    };
    Search s(g, k, limits, req);
    for (int v = 0; v < g.n(); ++v) {
        s.path.clear();
        s.path.push_back(v);
        uint64_t* blk = &s.blocked[1 * s.words];
        std::memset(blk, 0, s.words * 8);
        blk[static_cast<size_t>(v) >> 6] |= 1ULL << (v & 63);
        if (s.extend2()) return Verdict::kYes;
        if (s.budget_hit) return Verdict::kBudget;
    }
    return Verdict::kNo;
}

// ---------------------------------------------------------------------------
// 5-node pattern machinery

namespace {

constexpr int kPairIndex[5][5] = {
    {-1, 0, 1, 2, 3}, {0, -1, 4, 5, 6}, {1, 4, -1, 7, 8}, {2, 5, 7, -1, 9}, {3, 6, 8, 9, -1}};

struct Canon5Tables {
    std::array<std::array<uint8_t, 10>, 120> bitmap; // perm id -> bit remap
    std::array<uint16_t, 1024> canon;
    std::array<bool, 1024> traceable;

    Canon5Tables() {
        std::array<int, 5> perm = {0, 1, 2, 3, 4};
        int p = 0;
        do {
            for (int i = 0; i < 5; ++i)
                for (int j = i + 1; j < 5; ++j)
                    bitmap[p][kPairIndex[i][j]] =
                        static_cast<uint8_t>(kPairIndex[perm[i]][perm[j]]);
            ++p;
        } while (std::next_permutation(perm.begin(), perm.end()));

        for (uint32_t mask = 0; mask < 1024; ++mask) {
            uint16_t best = 0x3ff;
            for (int q = 0; q < 120; ++q) {
                uint16_t remapped = 0;
                for (int b = 0; b < 10; ++b)
                    if (mask & (1u << b)) remapped |= static_cast<uint16_t>(1u << bitmap[q][b]);
                best = std::min(best, remapped);
            }
            canon[mask] = best;

            bool tr = false;
            std::array<int, 5> order = {0, 1, 2, 3, 4};
            do {
                bool ok = true;
                for (int i = 0; i + 1 < 5 && ok; ++i)
                    if (!(mask & (1u << kPairIndex[order[i]][order[i + 1]]))) ok = false;
                if (ok) {
                    tr = true;
                    break;
                }
            } while (std::next_permutation(order.begin(), order.end()));
            traceable[mask] = tr;
        }
    }
};

const Canon5Tables& canon5_tables() {
    static const Canon5Tables t;
    return t;
}

Graph graph_from_mask5(uint16_t mask) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j)
            if (mask & (1u << kPairIndex[i][j])) e.emplace_back(i, j);
    return Graph::from_edges(5, e);
}

uint64_t count_copies_impl(const Graph& g, uint16_t target, bool parallel) {
    const auto& tab = canon5_tables();
    int n = g.n();
    if (n < 5) return 0;
    uint64_t total = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : total) if (parallel)
    for (int a = 0; a < n - 4; ++a) {
        int nodes[5];
        nodes[0] = a;
        for (int b = a + 1; b < n - 3; ++b) {
            nodes[1] = b;
            for (int c = b + 1; c < n - 2; ++c) {
                nodes[2] = c;
                for (int d = c + 1; d < n - 1; ++d) {
                    nodes[3] = d;
                    for (int e = d + 1; e < n; ++e) {
                        nodes[4] = e;
                        if (tab.canon[g.induced_mask5(nodes)] == target) ++total;
                    }
                }
            }
        }
    }
    return total;
}

} // namespace

uint16_t canon5(uint16_t mask) { return canon5_tables().canon[mask & 0x3ff]; }

uint16_t canon5_of(const Graph& pattern5) {
    if (pattern5.n() != 5) throw std::invalid_argument("canon5_of: pattern must have 5 nodes");
    int nodes[5] = {0, 1, 2, 3, 4};
    return canon5(pattern5.induced_mask5(nodes));
}

bool traceable5(uint16_t mask) { return canon5_tables().traceable[mask & 0x3ff]; }

uint64_t count_induced_copies(const Graph& g, const Graph& pattern5) {
    return count_copies_impl(g, canon5_of(pattern5), true);
}

uint64_t count_induced_copies_mask(const Graph& g, uint16_t pattern_canon) {
    return count_copies_impl(g, pattern_canon, true);
}

uint64_t ref::count_induced_copies(const Graph& g, const Graph& pattern5) {
    return count_copies_impl(g, canon5_of(pattern5), false);
}

int PatternCatalog::index_of(uint16_t canon) const {
    auto it = std::lower_bound(patterns.begin(), patterns.end(), canon);
    if (it == patterns.end() || *it != canon) return -1;
    return static_cast<int>(it - patterns.begin());
}

Graph PatternCatalog::pattern_graph(int index) const { return graph_from_mask5(patterns[index]); }

const PatternCatalog& pattern_catalog() {
    // All traceable 5-node graphs except the bare path and the complete
    // graph. The bare path has no removable extra edge, so it can never gain
    // a spanning path by edge deletion; for the complete graph the extra
    // edges touch every node, which the layer structure rules out.
    static const PatternCatalog cat = [] {
        const auto& tab = canon5_tables();
        uint16_t path_mask = 0;
        for (int i = 0; i + 1 < 5; ++i) path_mask |= static_cast<uint16_t>(1u << kPairIndex[i][i + 1]);
        uint16_t path_canon = tab.canon[path_mask];
        std::set<uint16_t> classes;
        for (uint32_t mask = 0; mask < 1024; ++mask)
            if (tab.traceable[mask]) classes.insert(tab.canon[mask]);
        classes.erase(path_canon);
        classes.erase(static_cast<uint16_t>(0x3ff));
        PatternCatalog c;
        c.patterns.assign(classes.begin(), classes.end());
        return c;
    }();
    return cat;
}

// ---------------------------------------------------------------------------
// ordered paths, distances, C4

bool ordered_induced_path_exists(const Graph& g, int k) {
    if (!g.colored())
        throw std::invalid_argument("ordered_induced_path_exists: graph has no colors");
    if (k < 1) throw std::invalid_argument("ordered_induced_path_exists: k must be positive");
    if (k > g.n()) return false;

    std::vector<int> path;
    std::vector<char> used(g.n(), 0);
    // extend by a neighbor of the last node: colored len+1, non-adjacent to
    // all path nodes before the last
    std::function<bool()> extend = [&]() -> bool {
        int len = static_cast<int>(path.size());
        if (len == k) return true;
        int last = path.back();
        for (int c : g.neighbors(last)) {
            if (used[c] || g.color(c) != len + 1) continue;
            bool ok = true;
            for (int i = 0; i + 1 < len && ok; ++i)
                if (g.has_edge(path[i], c)) ok = false;
            if (!ok) continue;
            used[c] = 1;
            path.push_back(c);
            if (extend()) return true;
            path.pop_back();
            used[c] = 0;
        }
        return false;
    };

    for (int v = 0; v < g.n(); ++v) {
        if (g.color(v) != 1) continue;
        if (k == 1) return true;
        path = {v};
        std::fill(used.begin(), used.end(), 0);
        used[v] = 1;
        if (extend()) return true;
    }
    return false;
}

std::vector<int> bfs_distances(const Graph& g, int source) {
    std::vector<int> dist(g.n(), -1);
    std::vector<int> queue;
    queue.reserve(g.n());
    dist[source] = 0;
    queue.push_back(source);
    for (size_t head = 0; head < queue.size(); ++head) {
        int u = queue[head];
        for (int v : g.neighbors(u))
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
    }
    return dist;
}

namespace {

std::optional<int> diameter_impl(const Graph& g, bool parallel) {
    int n = g.n();
    int best = 0;
    bool disconnected = false;
#pragma omp parallel for schedule(dynamic) reduction(max : best) reduction(|| : disconnected) \
    if (parallel)
    for (int s = 0; s < n; ++s) {
        auto dist = bfs_distances(g, s);
        for (int d : dist) {
            if (d < 0)
                disconnected = true;
            else
                best = std::max(best, d);
        }
    }
    if (disconnected) return std::nullopt;
    return best;
}

bool c4_impl(const Graph& g, bool parallel) {
    int n = g.n();
    // wedge enumeration: for each center a, all non-adjacent pairs (u, w) of
    // neighbors define a wedge; an induced C4 is two wedges on the same
    // (u, w) with non-adjacent centers
    std::vector<std::tuple<int, int, int>> wedges; // (u, w, center), u < w
    for (int a = 0; a < n; ++a) {
        const auto& nb = g.neighbors(a);
        for (size_t i = 0; i < nb.size(); ++i)
            for (size_t j = i + 1; j < nb.size(); ++j) {
                int u = nb[i], w = nb[j];
                if (!g.has_edge(u, w)) wedges.emplace_back(u, w, a);
            }
    }
    std::sort(wedges.begin(), wedges.end());
    std::atomic<bool> found{false};
    // group by (u, w); look for two centers that are non-adjacent
    std::vector<size_t> starts;
    for (size_t i = 0; i < wedges.size();) {
        size_t j = i;
        while (j < wedges.size() && std::get<0>(wedges[j]) == std::get<0>(wedges[i]) &&
               std::get<1>(wedges[j]) == std::get<1>(wedges[i]))
            ++j;
        starts.push_back(i);
        starts.push_back(j);
        i = j;
    }
    int groups = static_cast<int>(starts.size() / 2);
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (int gi = 0; gi < groups; ++gi) {
        if (found.load(std::memory_order_relaxed)) continue;
        size_t lo = starts[2 * static_cast<size_t>(gi)], hi = starts[2 * static_cast<size_t>(gi) + 1];
        for (size_t x = lo; x < hi && !found.load(std::memory_order_relaxed); ++x)
            for (size_t y = x + 1; y < hi; ++y)
                if (!g.has_edge(std::get<2>(wedges[x]), std::get<2>(wedges[y]))) {
                    found.store(true, std::memory_order_relaxed);
                    break;
                }
    }
    return found.load();
}

} // namespace

std::optional<int> diameter(const Graph& g) { return diameter_impl(g, true); }
std::optional<int> ref::diameter(const Graph& g) { return diameter_impl(g, false); }

bool induced_c4_exists(const Graph& g) { return c4_impl(g, true); }

bool ref::induced_c4_exists(const Graph& g) {
    // direct 4-subset scan, kept independent of the wedge kernel
    int n = g.n();
    int nodes[4];
    for (nodes[0] = 0; nodes[0] < n - 3; ++nodes[0])
        for (nodes[1] = nodes[0] + 1; nodes[1] < n - 2; ++nodes[1])
            for (nodes[2] = nodes[1] + 1; nodes[2] < n - 1; ++nodes[2])
                for (nodes[3] = nodes[2] + 1; nodes[3] < n; ++nodes[3]) {
                    int deg[4] = {0, 0, 0, 0};
                    int edges = 0;
                    for (int i = 0; i < 4; ++i)
                        for (int j = i + 1; j < 4; ++j)
                            if (g.has_edge(nodes[i], nodes[j])) {
                                ++edges;
                                ++deg[i];
                                ++deg[j];
                            }
                    if (edges == 4 && deg[0] == 2 && deg[1] == 2 && deg[2] == 2 && deg[3] == 2)
                        return true;
                }
    return false;
}

} // namespace pathlab

#include "pathlab/quantum_c4.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace pathlab::qc4 {

std::string variant_name(Variant v) {
    switch (v) {
    case Variant::kNaive: return "naive";
    case Variant::kAmplified: return "amplified";
    case Variant::kBucketed: return "bucketed";
    }
    return "?";
}

namespace {

bool is_induced_c4(const Graph& g, int a, int b, int c, int d) {
    // cycle a-b-c-d with both diagonals absent
    return g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(c, d) && g.has_edge(d, a) &&
           !g.has_edge(a, c) && !g.has_edge(b, d);
}

// exhaustive: induced C4 with at least one vertex of degree <= delta
bool find_light_c4(const Graph& g, int delta, std::array<int, 4>& witness) {
    for (int u = 0; u < g.n(); ++u) {
        if (g.degree(u) > delta) continue;
        const auto& nb = g.neighbors(u);
        for (size_t i = 0; i < nb.size(); ++i)
            for (size_t j = i + 1; j < nb.size(); ++j) {
                int v = nb[i], x = nb[j];
                if (g.has_edge(v, x)) continue;
                // common neighbor of v and x avoiding N[u]
                for (int w : g.neighbors(v)) {
                    if (w == u || g.has_edge(u, w)) continue;
                    if (g.has_edge(x, w) && is_induced_c4(g, u, v, w, x)) {
                        witness = {u, v, w, x};
                        return true;
                    }
                }
            }
    }
    return false;
}

bool find_heavy_c4(const Graph& g, int delta, std::array<int, 4>& witness) {
    for (int u = 0; u < g.n(); ++u) {
        if (g.degree(u) <= delta) continue;
        const auto& nb = g.neighbors(u);
        for (size_t i = 0; i < nb.size(); ++i) {
            if (g.degree(nb[i]) <= delta) continue;
            for (size_t j = i + 1; j < nb.size(); ++j) {
                if (g.degree(nb[j]) <= delta) continue;
                int v = nb[i], x = nb[j];
                if (g.has_edge(v, x)) continue;
                for (int w : g.neighbors(v)) {
                    if (w == u || g.degree(w) <= delta || g.has_edge(u, w)) continue;
                    if (g.has_edge(x, w) && is_induced_c4(g, u, v, w, x)) {
                        witness = {u, v, w, x};
                        return true;
                    }
                }
            }
        }
    }
    return false;
}

} // namespace

namespace {

// double-sweep estimate of the diameter, largest component
double diameter_estimate(const Graph& g) {
    int start = 0;
    for (int u = 1; u < g.n(); ++u)
        if (g.degree(u) > g.degree(start)) start = u;
    auto d1 = bfs_distances(g, start);
    int far = start, best = 0;
    for (int u = 0; u < g.n(); ++u)
        if (d1[u] > best) {
            best = d1[u];
            far = u;
        }
    auto d2 = bfs_distances(g, far);
    int ecc = 0;
    for (int d : d2) ecc = std::max(ecc, d);
    return static_cast<double>(std::max(best, ecc));
}

} // namespace

std::vector<int> light_candidate_set(const Graph& g, int delta, int v) {
    // union of light neighborhoods minus N(v); independent of the far
    // endpoint, per the literal definition
    std::vector<char> in_union(g.n(), 0);
    for (int u = 0; u < g.n(); ++u)
        if (g.degree(u) <= delta)
            for (int w : g.neighbors(u)) in_union[w] = 1;
    std::vector<int> out;
    for (int w = 0; w < g.n(); ++w)
        if (in_union[w] && !g.has_edge(v, w)) out.push_back(w);
    return out;
}

PhaseResult detect_light_c4(const Graph& g, int delta, QuantumCostModel& cost) {
    PhaseResult res;
    int n = g.n();
    // light nodes broadcast their lists, one id per round
    int broadcast_rounds = 0;
    for (int u = 0; u < n; ++u)
        if (g.degree(u) <= delta) broadcast_rounds = std::max(broadcast_rounds, g.degree(u));
    cost.charge("light-broadcast", broadcast_rounds);

    // per-edge searches run in parallel; charge the maximum
    std::vector<char> in_union(n, 0);
    long long union_size = 0;
    for (int u = 0; u < n; ++u)
        if (g.degree(u) <= delta)
            for (int w : g.neighbors(u))
                if (!in_union[w]) {
                    in_union[w] = 1;
                    ++union_size;
                }
    double max_search = 0;
    for (auto [v, w] : g.edges()) {
        long long overlap = 0;
        for (int t : g.neighbors(v))
            if (in_union[t]) ++overlap;
        long long s_size = union_size - overlap; // |U \ N(v)|
        double c1 = cost.search_charge(std::min<double>(static_cast<double>(s_size),
                                                        g.degree(w)),
                                       1.0, n);
        max_search = std::max(max_search, c1);
    }
    cost.charge("light-search", max_search);

    res.found = find_light_c4(g, delta, res.witness);
    res.charged = broadcast_rounds + max_search;
    return res;
}

std::vector<int> heavy_candidate_set(const Graph& g, int delta, uint64_t seed, int u, int v) {
    // received edges: for each neighbor t of u, the bucket N_{i_u}(t)
    auto id_of = [&](int w) {
        return 1 + static_cast<int>(mix64(seed, 0xb0c4ULL ^ static_cast<uint64_t>(w)) %
                                    static_cast<uint64_t>(delta));
    };
    int iu = 1 + static_cast<int>(mix64(seed, 0x5a3cULL ^ static_cast<uint64_t>(u)) %
                                  static_cast<uint64_t>(delta));
    std::set<std::pair<int, int>> received;
    for (int t : g.neighbors(u))
        for (int w : g.neighbors(t))
            if (id_of(w) == iu) received.insert({t, w});
    // S(v) = { x | exists w not in N(u): (v,w) and (w,x) received }
    std::set<int> s;
    for (int w : g.neighbors(v)) {
        if (w == u || g.has_edge(u, w)) continue;
        if (!received.count({v, w})) continue;
        for (int x : g.neighbors(u))
            if (received.count({x, w})) s.insert(x);
    }
    return {s.begin(), s.end()};
}

PhaseResult detect_heavy_c4(const Graph& g, int delta, uint64_t seed, QuantumCostModel& cost,
                            Variant variant) {
    PhaseResult res;
    int n = g.n();
    delta = std::max(1, delta);

    // bucket labels, resampled while some bucket overflows the whp bound
    double bucket_bound = 6.0 * std::max(1.0, static_cast<double>(n) / delta) + 6.0;
    uint64_t attempt_seed = seed;
    int max_bucket = 0;
    for (int attempt = 0;; ++attempt) {
        auto id_of = [&](int w) {
            return 1 + static_cast<int>(mix64(attempt_seed, 0xb0c4ULL ^ static_cast<uint64_t>(w)) %
                                        static_cast<uint64_t>(delta));
        };
        max_bucket = 0;
        std::vector<std::map<int, int>> bucket_sizes(n);
        for (int u = 0; u < n; ++u) {
            std::map<int, int> sizes;
            for (int w : g.neighbors(u)) sizes[id_of(w)]++;
            for (auto& [i, c] : sizes) max_bucket = std::max(max_bucket, c);
        }
        if (max_bucket <= bucket_bound || attempt >= 3) {
            res.retries = attempt;
            break;
        }
        attempt_seed = mix64(attempt_seed, 0x7e7aULL);
    }
    cost.charge("heavy-id-broadcast", 1.0);

    // each node pulls the sampled bucket from each neighbor; rounds are the
    // largest transferred bucket
    auto id_of = [&](int w) {
        return 1 + static_cast<int>(mix64(attempt_seed, 0xb0c4ULL ^ static_cast<uint64_t>(w)) %
                                    static_cast<uint64_t>(delta));
    };
    int transfer_rounds = 0;
    for (int u = 0; u < n; ++u) {
        int iu = 1 + static_cast<int>(mix64(attempt_seed, 0x5a3cULL ^ static_cast<uint64_t>(u)) %
                                      static_cast<uint64_t>(delta));
        for (int v : g.neighbors(u)) {
            int cnt = 0;
            for (int w : g.neighbors(v))
                if (id_of(w) == iu) ++cnt;
            transfer_rounds = std::max(transfer_rounds, cnt);
        }
    }
    cost.charge("heavy-transfer", transfer_rounds);

    // per-edge marked-element search over the vertex set, charged once (all
    // edges run in parallel)
    double search = cost.search_charge(n, 1.0, n);
    double inner = transfer_rounds + search;
    double d_term = diameter_estimate(g);

    double charged = 0;
    switch (variant) {
    case Variant::kNaive:
        charged = std::ceil(cost.search_constant * delta * delta) * inner;
        cost.charge("heavy-naive-repetition", charged);
        break;
    case Variant::kAmplified:
        charged = cost.amplify_charge(1.0 / (static_cast<double>(delta) * delta), inner, d_term);
        cost.charge("heavy-amplified", charged);
        break;
    case Variant::kBucketed:
        charged = cost.amplify_charge(1.0 / delta, inner, d_term);
        cost.charge("heavy-bucketed", charged);
        break;
    }

    res.found = find_heavy_c4(g, delta, res.witness);
    res.charged = 1.0 + transfer_rounds + charged;

    if (res.found) {
        // measured exposure: a witness (u, v, w, x) surfaces at u when the
        // middle vertex w landed in u's sampled bucket
        long long witnesses = 0, exposed = 0;
        for (int u = 0; u < n; ++u) {
            if (g.degree(u) <= delta) continue;
            int iu = 1 + static_cast<int>(mix64(attempt_seed, 0x5a3cULL ^ static_cast<uint64_t>(u)) %
                                          static_cast<uint64_t>(delta));
            const auto& nb = g.neighbors(u);
            for (size_t i = 0; i < nb.size(); ++i) {
                if (g.degree(nb[i]) <= delta) continue;
                for (size_t j = i + 1; j < nb.size(); ++j) {
                    if (g.degree(nb[j]) <= delta) continue;
                    int v = nb[i], x = nb[j];
                    if (g.has_edge(v, x)) continue;
                    for (int w : g.neighbors(v)) {
                        if (w == u || g.degree(w) <= delta || g.has_edge(u, w)) continue;
                        if (!g.has_edge(x, w) || !is_induced_c4(g, u, v, w, x)) continue;
                        ++witnesses;
                        if (id_of(w) == iu) ++exposed;
                    }
                }
            }
        }
        if (witnesses > 0)
            res.sample_exposure = static_cast<double>(exposed) / static_cast<double>(witnesses);
    }
    return res;
}

nlohmann::json DetectResult::to_json() const {
    return {{"found", found},
            {"charged_rounds", charged},
            {"light", {{"found", light.found}, {"charged", light_charged}}},
            {"heavy",
             {{"found", heavy.found},
              {"charged", heavy_charged},
              {"retries", heavy.retries},
              {"sample_exposure", heavy.sample_exposure}}}};
}

DetectResult detect_induced_c4(const Graph& g, uint64_t seed, QuantumCostModel cost,
                               Variant variant, int delta_policy) {
    DetectResult r;
    int delta = delta_policy > 0
                    ? delta_policy
                    : std::max(1, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(g.n())))));
    r.light = detect_light_c4(g, delta, cost);
    r.heavy = detect_heavy_c4(g, delta, seed, cost, variant);
    r.light_charged = r.light.charged;
    r.heavy_charged = r.heavy.charged;
    r.charged = r.light.charged + r.heavy.charged;
    r.found = r.light.found || r.heavy.found;
    return r;
}

bool detect_majority(const Graph& g, uint64_t seed, const QuantumCostModel& cost, Variant variant,
                     int runs) {
    int yes = 0;
    for (int i = 0; i < runs; ++i)
        if (detect_induced_c4(g, mix64(seed, 0xc4c4ULL + static_cast<uint64_t>(i)), cost, variant)
                .found)
            ++yes;
    return 2 * yes > runs;
}

ReductionInstance ordered_p3_reduction(const Graph& g, int u, uint64_t seed) {
    auto dist = bfs_distances(g, u);
    ReductionInstance inst;
    for (int v = 0; v < g.n(); ++v)
        if (dist[v] == 1 || dist[v] == 2) inst.original_ids.push_back(v);
    std::map<int, int> fwd;
    for (size_t i = 0; i < inst.original_ids.size(); ++i)
        fwd[inst.original_ids[i]] = static_cast<int>(i);
    std::vector<std::pair<int, int>> edges;
    for (int v : inst.original_ids)
        for (int w : g.neighbors(v))
            if (fwd.count(w) && v < w) edges.emplace_back(fwd[v], fwd[w]);
    std::vector<int> colors(inst.original_ids.size());
    Rng rng(seed);
    for (size_t i = 0; i < inst.original_ids.size(); ++i) {
        int v = inst.original_ids[i];
        colors[i] = dist[v] == 2 ? 2 : (rng.coin(0.5) ? 1 : 3);
    }
    int m = static_cast<int>(inst.original_ids.size());
    inst.subgraph = m == 0 ? Graph::from_edges(1, {}, std::vector<int>{2})
                           : Graph::from_edges(m, edges, colors);
    return inst;
}

double fit_exponent(const std::vector<std::pair<int, double>>& points) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int k = 0;
    for (auto [n, charged] : points) {
        if (charged <= 0) continue;
        double lx = std::log(static_cast<double>(n)), ly = std::log(charged);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++k;
    }
    if (k < 2) return 0.0;
    return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

} // namespace pathlab::qc4

#include "pathlab/certify.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace pathlab::cert {

using p5::make_edge;

namespace {

constexpr int kHeaderBits = 20;
constexpr int kDistBits = 3;
constexpr int kDistCap = 7;

struct Widths {
    int idb;
    int cnt;     // list length fields
    int cls;     // class totals / shares
    int pat;     // pattern totals / shares
    int paycnt;  // payload length
    explicit Widths(int n)
        : idb(id_bits(n)), cnt(id_bits(n) + 1), cls(2 * id_bits(n) + 2),
          pat(std::min(5 * id_bits(n) + 1, 62)), paycnt(2 * id_bits(n) + 2) {}
};

constexpr int kPair5[5][5] = {
    {-1, 0, 1, 2, 3}, {0, -1, 4, 5, 6}, {1, 4, -1, 7, 8}, {2, 5, 7, -1, 9}, {3, 6, 8, 9, -1}};

} // namespace

std::vector<uint8_t> encode_cert(const Cert& c) {
    Widths w(c.n);
    size_t npat = pattern_catalog().patterns.size();
    BitWriter bw;
    bw.put(static_cast<uint64_t>(c.n), kHeaderBits);
    bw.put(c.neighbors.size(), w.cnt);
    for (int v : c.neighbors) bw.put(static_cast<uint64_t>(v), w.idb);
    for (int d : c.dist_self) bw.put(static_cast<uint64_t>(std::min(d, kDistCap)), kDistBits);
    bw.put(static_cast<uint64_t>(c.root_id), w.idb);
    for (int d : c.dist_root) bw.put(static_cast<uint64_t>(std::min(d, kDistCap)), kDistBits);
    bw.put(static_cast<uint64_t>(c.groups), w.cnt);
    int gbits = bits_for(static_cast<uint64_t>(std::max(1, c.groups)));
    for (int x : c.group) bw.put(static_cast<uint64_t>(x), gbits);
    bw.put(c.r_list.size(), w.cnt);
    for (int v : c.r_list) bw.put(static_cast<uint64_t>(v), w.idb);
    for (int i = 0; i < 4; ++i) bw.put(c.class_totals[i], w.cls);
    for (int i = 0; i < 4; ++i) bw.put(c.class_shares[i], w.cls);
    for (size_t i = 0; i < npat; ++i) bw.put(c.pattern_totals[i], w.pat);
    for (size_t i = 0; i < npat; ++i) bw.put(c.pattern_shares[i], w.pat);
    for (size_t i = 0; i < c.neighbors.size(); ++i) bw.put(c.edge_flags[i], 1);
    for (size_t i = 0; i < c.neighbors.size(); ++i) bw.put(c.edge_class[i], 2);
    bw.put(c.labeled ? 1 : 0, 1);
    if (c.labeled) {
        bw.put(c.payload.size(), w.paycnt);
        for (auto& [a, b] : c.payload) {
            bw.put(static_cast<uint64_t>(a), w.idb);
            bw.put(static_cast<uint64_t>(b), w.idb);
        }
    }
    return bw.bytes();
}

size_t encoded_bits(const Cert& c) {
    Widths w(c.n);
    size_t npat = pattern_catalog().patterns.size();
    size_t bits = kHeaderBits + w.cnt + c.neighbors.size() * w.idb +
                  c.dist_self.size() * kDistBits + w.idb + c.dist_root.size() * kDistBits +
                  w.cnt + c.group.size() * bits_for(static_cast<uint64_t>(std::max(1, c.groups))) +
                  w.cnt + c.r_list.size() * w.idb + 8 * w.cls + 2 * npat * w.pat +
                  c.neighbors.size() * 3 + 1;
    if (c.labeled) bits += w.paycnt + c.payload.size() * 2 * w.idb;
    return bits;
}

Cert decode_cert(const std::vector<uint8_t>& blob, size_t bits, int expect_n) {
    BitReader br(blob, bits);
    Cert c;
    c.n = static_cast<int>(br.get(kHeaderBits));
    if (c.n != expect_n || c.n <= 0) throw std::runtime_error("cert: wrong node count");
    Widths w(c.n);
    size_t npat = pattern_catalog().patterns.size();
    auto read_id = [&]() {
        int v = static_cast<int>(br.get(w.idb));
        if (v >= c.n) throw std::runtime_error("cert: id out of range");
        return v;
    };
    size_t deg = br.get(w.cnt);
    if (deg > static_cast<size_t>(c.n)) throw std::runtime_error("cert: degree out of range");
    for (size_t i = 0; i < deg; ++i) c.neighbors.push_back(read_id());
    c.dist_self.resize(c.n);
    for (int& d : c.dist_self) d = static_cast<int>(br.get(kDistBits));
    c.root_id = read_id();
    c.dist_root.resize(c.n);
    for (int& d : c.dist_root) d = static_cast<int>(br.get(kDistBits));
    c.groups = static_cast<int>(br.get(w.cnt));
    if (c.groups < 1 || c.groups > c.n) throw std::runtime_error("cert: bad group count");
    int gbits = bits_for(static_cast<uint64_t>(c.groups));
    c.group.resize(c.n);
    for (int& x : c.group) {
        x = static_cast<int>(br.get(gbits));
        if (x < 1 || x > c.groups) throw std::runtime_error("cert: group out of range");
    }
    size_t rl = br.get(w.cnt);
    if (rl > static_cast<size_t>(c.n)) throw std::runtime_error("cert: root list too long");
    for (size_t i = 0; i < rl; ++i) c.r_list.push_back(read_id());
    c.class_totals.resize(4);
    c.class_shares.resize(4);
    for (auto& x : c.class_totals) x = br.get(w.cls);
    for (auto& x : c.class_shares) x = br.get(w.cls);
    c.pattern_totals.resize(npat);
    c.pattern_shares.resize(npat);
    for (auto& x : c.pattern_totals) x = br.get(w.pat);
    for (auto& x : c.pattern_shares) x = br.get(w.pat);
    c.edge_flags.resize(deg);
    for (auto& f : c.edge_flags) f = static_cast<uint8_t>(br.get(1));
    c.edge_class.resize(deg);
    for (auto& f : c.edge_class) {
        f = static_cast<uint8_t>(br.get(2));
        if (f > 2) throw std::runtime_error("cert: bad edge class");
    }
    c.labeled = br.get(1) != 0;
    if (c.labeled) {
        size_t pc = br.get(w.paycnt);
        if (pc > static_cast<size_t>(c.n) * c.n) throw std::runtime_error("cert: payload too long");
        for (size_t i = 0; i < pc; ++i) {
            int a = read_id(), b = read_id();
            if (a >= b) throw std::runtime_error("cert: payload edge not normalized");
            c.payload.push_back({a, b});
        }
    }
    return c;
}

size_t CertificateBundle::max_bits() const {
    size_t m = 0;
    for (size_t b : bits) m = std::max(m, b);
    return m;
}

nlohmann::json CertificateBundle::debug_json() const {
    nlohmann::json nodes = nlohmann::json::array();
    for (int u = 0; u < n; ++u) {
        Cert c = decode_cert(blob[u], bits[u], n);
        nodes.push_back({{"node", u},
                         {"bits", bits[u]},
                         {"neighbors", c.neighbors},
                         {"root", c.root_id},
                         {"groups", c.groups},
                         {"labeled", c.labeled},
                         {"payload_edges", c.payload.size()}});
    }
    return {{"n", n}, {"nodes", nodes}};
}

// ---------------------------------------------------------------------------
// prover

CertificateBundle prove(const Graph& g, uint64_t seed) {
    int n = g.n();
    // exact distance vectors
    std::vector<std::vector<int>> dist(n);
    for (int u = 0; u < n; ++u) {
        dist[u] = bfs_distances(g, u);
        for (int& d : dist[u])
            if (d < 0 || d > kDistCap) d = kDistCap;
    }
    int root = 0;
    for (int u = 1; u < n; ++u)
        if (g.degree(u) > g.degree(root)) root = u;
    const std::vector<int>& layer = dist[root];

    long long m = g.m();
    int s = std::max(1, static_cast<int>(std::ceil(
                            std::sqrt(static_cast<double>(m) / std::max(1, n)))));
    s = std::min(s, std::max(1, static_cast<int>(std::floor(
                                    std::sqrt(static_cast<double>(std::max(1, g.degree(root))))))));

    // label order: degree descending, ties by minimum id
    std::vector<int> r_list = g.neighbors(root);
    std::sort(r_list.begin(), r_list.end(), [&](int a, int b) {
        if (g.degree(a) != g.degree(b)) return g.degree(a) > g.degree(b);
        return a < b;
    });
    std::vector<int> labels(static_cast<size_t>(s) * s + 1, -1);
    for (int k = 1; k <= s * s && k <= static_cast<int>(r_list.size()); ++k)
        labels[k] = r_list[k - 1];

    // partition resampled toward the per-pair bound
    std::vector<int> group(n, 1);
    for (int attempt = 0; attempt < 50; ++attempt) {
        for (int u = 0; u < n; ++u) {
            Rng rng(mix64(seed, 0xce27ULL + static_cast<uint64_t>(attempt) * 100003 +
                                     static_cast<uint64_t>(u)));
            group[u] = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(s)));
        }
        std::map<std::pair<int, int>, long long> pair_count;
        for (auto [u, v] : g.edges()) {
            int i = std::min(group[u], group[v]), j = std::max(group[u], group[v]);
            pair_count[{i, j}]++;
        }
        bool ok = true;
        for (auto& [pr, cnt] : pair_count) {
            double mult = pr.first == pr.second ? 1.0 : 4.0;
            if (static_cast<double>(cnt) > 6.0 * mult * static_cast<double>(m) / (s * s))
                ok = false;
        }
        if (ok) break;
    }

    auto classes = p5::classify_edges(g, layer, group, s, labels);

    // dangerous-pattern counts and their designated nodes
    auto counts = p5::count_dangerous_core(g, layer, classes.fbad, classes.e33);
    size_t npat = counts.per_pattern.size();

    // subtree shares over the min-id-parent BFS tree
    sim::RootedTree tree = g.connected() ? sim::bfs_tree(g, root) : sim::RootedTree{};
    if (!g.connected()) throw std::invalid_argument("prove: graph must be connected");
    std::vector<std::vector<int>> children(n);
    std::vector<int> order;
    for (int u = 0; u < n; ++u)
        if (u != root) children[tree.parent[u]].push_back(u);
    // process deepest first
    order.resize(n);
    for (int u = 0; u < n; ++u) order[u] = u;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return tree.depth_of[a] > tree.depth_of[b]; });
    auto subtree_shares = [&](const std::vector<uint64_t>& a) {
        std::vector<uint64_t> b(a);
        for (int u : order)
            if (u != root) b[tree.parent[u]] += b[u];
        return b;
    };

    auto edge_class_of = [&](const p5::Edge& e) -> int {
        if (classes.tilde22.count(e)) return 1;
        if (classes.fbad.count(e)) return 2;
        return 0;
    };
    auto layer_pair = [&](const p5::Edge& e) {
        int a = layer[e.first], b = layer[e.second];
        if (a > b) std::swap(a, b);
        return a * 10 + b;
    };

    std::vector<std::vector<uint64_t>> class_a(4, std::vector<uint64_t>(n, 0));
    for (auto [u, v] : g.edges()) {
        p5::Edge e = make_edge(u, v);
        int lp = layer_pair(e);
        int idx = -1;
        if (lp == 22 && classes.tilde22.count(e)) idx = 0;
        if (lp == 22 && classes.fbad.count(e)) idx = 1;
        if (lp == 23) idx = 2;
        if (lp == 33) idx = 3;
        if (idx >= 0) {
            class_a[idx][u]++;
            class_a[idx][v]++;
        }
    }
    std::vector<std::vector<uint64_t>> class_b;
    for (auto& a : class_a) class_b.push_back(subtree_shares(a));
    std::vector<std::vector<uint64_t>> pattern_b;
    for (auto& a : counts.per_node_pattern) pattern_b.push_back(subtree_shares(a));

    // assigned edges per label: every group-pair edge with an endpoint within
    // distance 2 of the label node
    std::map<int, std::vector<p5::Edge>> payloads;
    for (int k = 1; k < static_cast<int>(labels.size()); ++k) {
        if (labels[k] < 0) continue;
        int i = (k - 1) % s + 1, j = (k - 1) / s + 1;
        if (i > j) continue;
        int vk = labels[k];
        std::set<int> ball2;
        ball2.insert(vk);
        for (int w : g.neighbors(vk)) {
            ball2.insert(w);
            for (int x : g.neighbors(w)) ball2.insert(x);
        }
        auto& pay = payloads[vk];
        for (auto [u, v] : g.edges()) {
            int gi = std::min(group[u], group[v]), gj = std::max(group[u], group[v]);
            if (gi != i || gj != j) continue;
            if (ball2.count(u) || ball2.count(v)) pay.push_back(make_edge(u, v));
        }
        std::sort(pay.begin(), pay.end());
    }

    CertificateBundle bundle;
    bundle.n = n;
    bundle.blob.resize(n);
    bundle.bits.resize(n);
    for (int u = 0; u < n; ++u) {
        Cert c;
        c.n = n;
        c.neighbors = g.neighbors(u);
        c.dist_self = dist[u];
        c.root_id = root;
        c.dist_root = dist[root];
        c.groups = s;
        c.group = group;
        c.r_list = r_list;
        c.class_totals.resize(4);
        c.class_shares.resize(4);
        for (int i = 0; i < 4; ++i) {
            c.class_totals[i] = class_b[i][root];
            c.class_shares[i] = class_b[i][u];
        }
        c.pattern_totals.resize(npat);
        c.pattern_shares.resize(npat);
        for (size_t i = 0; i < npat; ++i) {
            c.pattern_totals[i] = pattern_b[i][root];
            c.pattern_shares[i] = pattern_b[i][u];
        }
        c.edge_flags.resize(c.neighbors.size(), 0);
        c.edge_class.resize(c.neighbors.size(), 0);
        for (size_t i = 0; i < c.neighbors.size(); ++i) {
            p5::Edge e = make_edge(u, c.neighbors[i]);
            auto it = classes.cond1_flags.find(e);
            if (it != classes.cond1_flags.end())
                c.edge_flags[i] = (u == e.first ? it->second.first : it->second.second) ? 1 : 0;
            c.edge_class[i] = static_cast<uint8_t>(edge_class_of(e));
        }
        auto pit = payloads.find(u);
        if (pit != payloads.end()) {
            c.labeled = true;
            c.payload = pit->second;
        } else {
            // a label node with an empty assignment still flags itself
            for (int k = 1; k < static_cast<int>(labels.size()); ++k)
                if (labels[k] == u) c.labeled = true;
        }
        bundle.blob[u] = encode_cert(c);
        bundle.bits[u] = encoded_bits(c);
    }
    return bundle;
}

// ---------------------------------------------------------------------------
// verifier

namespace {

// adjacency assembled from the 1-ball's certificates
class CertSource : public p5::AdjacencySource {
public:
    CertSource(int self, const Cert& own, const std::vector<Cert>& nbrs) : self_(self) {
        lists_[self] = own.neighbors;
        for (size_t i = 0; i < own.neighbors.size(); ++i) lists_[own.neighbors[i]] = nbrs[i].neighbors;
        for (auto& [u, l] : lists_)
            for (int v : l) edges_.insert(make_edge(u, v));
    }
    const std::vector<int>& neighbors(int u) const override {
        auto it = lists_.find(u);
        if (it == lists_.end()) return empty_;
        return it->second;
    }
    bool edge(int a, int b) const override { return edges_.count(make_edge(a, b)) > 0; }

private:
    int self_;
    std::map<int, std::vector<int>> lists_;
    std::set<Edge> edges_;
    std::vector<int> empty_;
};

struct Ball {
    int self;
    int n;
    Cert own;
    std::vector<Cert> nbr; // aligned with own.neighbors
    const Cert& of(int v) const {
        for (size_t i = 0; i < own.neighbors.size(); ++i)
            if (own.neighbors[i] == v) return nbr[i];
        throw std::runtime_error("not a neighbor");
    }
    bool is_nbr(int v) const {
        return std::find(own.neighbors.begin(), own.neighbors.end(), v) != own.neighbors.end();
    }
};

bool fail(std::string* reason, const std::string& why) {
    if (reason) *reason = why;
    return false;
}

// layer-1 neighborhood from a certificate's neighbor list
std::vector<int> v1_of(const Cert& c, const std::vector<int>& layer) {
    std::vector<int> out;
    for (int w : c.neighbors)
        if (layer[w] == 1) out.push_back(w);
    return out;
}

std::vector<int> v2_of(const Cert& c, const std::vector<int>& layer) {
    std::vector<int> out;
    for (int w : c.neighbors)
        if (layer[w] == 2) out.push_back(w);
    return out;
}

int parent_from_cert(const Cert& c, int v, const std::vector<int>& layer) {
    // minimum-id neighbor one level closer to the root
    for (int w : c.neighbors)
        if (layer[w] == layer[v] - 1) return w;
    return -1;
}

} // namespace

bool verify_node(const NodeInputs& in, std::string* reason) {
    Ball ball;
    ball.self = in.self;
    ball.n = in.n;
    try {
        ball.own = decode_cert(*in.own_blob, in.own_bits, in.n);
        for (size_t i = 0; i < in.nbr_blobs.size(); ++i)
            ball.nbr.push_back(decode_cert(*in.nbr_blobs[i], in.nbr_bits[i], in.n));
    } catch (const std::exception& e) {
        return fail(reason, std::string("malformed certificate: ") + e.what());
    }
    const Cert& own = ball.own;
    int self = in.self, n = in.n;
    size_t npat = pattern_catalog().patterns.size();

    // the claimed neighbor list must match the true incident edges
    if (own.neighbors != in.true_neighbors) return fail(reason, "neighbor list mismatch");
    for (size_t i = 0; i < ball.nbr.size(); ++i) {
        const Cert& c = ball.nbr[i];
        if (!std::binary_search(c.neighbors.begin(), c.neighbors.end(), self) &&
            std::find(c.neighbors.begin(), c.neighbors.end(), self) == c.neighbors.end())
            return fail(reason, "missing from neighbor's list");
    }

    // own distance vector
    if (own.dist_self[self] != 0) return fail(reason, "self distance not zero");
    for (int x = 0; x < n; ++x) {
        if (x != self && own.dist_self[x] == 0) return fail(reason, "foreign zero distance");
        if (own.dist_self[x] > 3) return fail(reason, "distance above three");
        for (auto& c : ball.nbr)
            if (std::abs(own.dist_self[x] - c.dist_self[x]) > 1)
                return fail(reason, "distance vectors not Lipschitz");
        if (x != self) {
            bool descent = false;
            for (auto& c : ball.nbr)
                if (c.dist_self[x] == own.dist_self[x] - 1) descent = true;
            if (!descent) return fail(reason, "no descent neighbor");
        }
    }

    // shared root vector
    const std::vector<int>& layer = own.dist_root;
    for (auto& c : ball.nbr) {
        if (c.root_id != own.root_id) return fail(reason, "root id disagreement");
        if (c.dist_root != own.dist_root) return fail(reason, "root vector disagreement");
    }
    if ((layer[self] == 0) != (self == own.root_id)) return fail(reason, "root zero entry");
    if (layer[own.root_id] != 0) return fail(reason, "root entry nonzero");
    for (int x = 0; x < n; ++x)
        if (layer[x] > 3) return fail(reason, "root distance above three");
    if (self != own.root_id) {
        bool descent = false;
        for (int v : own.neighbors)
            if (layer[v] == layer[self] - 1) descent = true;
        if (!descent) return fail(reason, "no root descent neighbor");
    }
    for (int v : own.neighbors)
        if (std::abs(layer[self] - layer[v]) > 1) return fail(reason, "root vector not Lipschitz");

    // global agreement of partition data
    for (auto& c : ball.nbr) {
        if (c.groups != own.groups || c.group != own.group)
            return fail(reason, "partition disagreement");
        if (c.r_list != own.r_list) return fail(reason, "label list disagreement");
        if (c.class_totals != own.class_totals || c.pattern_totals != own.pattern_totals)
            return fail(reason, "totals disagreement");
    }
    int s = own.groups;

    // the root validates the label order: its neighbors by degree descending
    if (self == own.root_id) {
        std::vector<int> expect = own.neighbors;
        auto deg_of = [&](int v) { return static_cast<int>(ball.of(v).neighbors.size()); };
        std::sort(expect.begin(), expect.end(), [&](int a, int b) {
            if (deg_of(a) != deg_of(b)) return deg_of(a) > deg_of(b);
            return a < b;
        });
        if (own.r_list != expect) return fail(reason, "label order invalid");
    }

    std::vector<int> labels(static_cast<size_t>(s) * s + 1, -1);
    for (int k = 1; k <= s * s && k <= static_cast<int>(own.r_list.size()); ++k)
        labels[k] = own.r_list[k - 1];

    // verify own reachability flags and edge classes; evaluate the local
    // reject conditions
    auto flag_expected = [&](int v) -> bool {
        int i = std::min(own.group[self], own.group[v]);
        int j = std::max(own.group[self], own.group[v]);
        int k = i + (j - 1) * s;
        int vk = k < static_cast<int>(labels.size()) ? labels[k] : -1;
        if (vk < 0) return false;
        for (size_t w = 0; w < own.neighbors.size(); ++w) {
            const auto& wn = ball.nbr[w].neighbors;
            if (std::find(wn.begin(), wn.end(), vk) != wn.end()) return true;
        }
        return false;
    };
    auto v1_self = v1_of(own, layer);
    for (size_t i = 0; i < own.neighbors.size(); ++i) {
        int v = own.neighbors[i];
        bool e22 = layer[self] == 2 && layer[v] == 2;
        if (!e22) {
            if (own.edge_flags[i] != 0) return fail(reason, "flag on non-internal edge");
            if (own.edge_class[i] != 0) return fail(reason, "class on non-internal edge");
            continue;
        }
        bool mine = flag_expected(v);
        if ((own.edge_flags[i] != 0) != mine) return fail(reason, "wrong reachability flag");
        const Cert& cv = ball.of(v);
        auto pos = std::find(cv.neighbors.begin(), cv.neighbors.end(), self);
        if (pos == cv.neighbors.end()) return fail(reason, "partner list misses edge");
        bool partner = cv.edge_flags[static_cast<size_t>(pos - cv.neighbors.begin())] != 0;
        bool v3_contact = false;
        for (int w : own.neighbors)
            if (layer[w] == 3) v3_contact = true;
        for (int w : cv.neighbors)
            if (layer[w] == 3) v3_contact = true;
        int cls;
        if (mine || partner || v3_contact) {
            cls = 1;
        } else if (v1_self == v1_of(cv, layer)) {
            cls = 2;
        } else {
            return fail(reason, "unmarked edge with distinct layer-1 neighborhoods");
        }
        if (own.edge_class[i] != cls) return fail(reason, "edge class mismatch");
        if (cls == 2) {
            // every layer-2 contact must contain the shared layer-1 set
            for (size_t w = 0; w < own.neighbors.size(); ++w) {
                if (layer[own.neighbors[w]] != 2) continue;
                const auto& wn = ball.nbr[w].neighbors;
                for (int y : v1_self)
                    if (std::find(wn.begin(), wn.end(), y) == wn.end())
                        return fail(reason, "bad edge with escaping layer-2 contact");
            }
        }
        if (layer[self] == 3 && layer[v] == 3) {
            // unreachable here (e22 branch), kept for clarity
        }
    }
    // cross-layer condition on deepest edges
    for (size_t i = 0; i < own.neighbors.size(); ++i) {
        int v = own.neighbors[i];
        if (layer[self] == 3 && layer[v] == 3) {
            const Cert& cv = ball.of(v);
            if (v2_of(own, layer) != v2_of(cv, layer))
                return fail(reason, "deep edge with distinct layer-2 neighborhoods");
        }
    }

    // counter shares: recompute own contribution, check the tree recurrence
    auto class_index = [&](int v, size_t i) -> int {
        int a = layer[self], b = layer[v];
        int lo = std::min(a, b), hi = std::max(a, b);
        if (lo == 2 && hi == 2) return own.edge_class[i] == 1 ? 0 : own.edge_class[i] == 2 ? 1 : -1;
        if (lo == 2 && hi == 3) return 2;
        if (lo == 3 && hi == 3) return 3;
        return -1;
    };
    std::vector<uint64_t> a_counter(4, 0);
    for (size_t i = 0; i < own.neighbors.size(); ++i) {
        int ci = class_index(own.neighbors[i], i);
        if (ci >= 0) a_counter[static_cast<size_t>(ci)]++;
    }
    std::vector<int> children;
    for (int v : own.neighbors)
        if (layer[v] == layer[self] + 1 && parent_from_cert(ball.of(v), v, layer) == self)
            children.push_back(v);
    for (int c = 0; c < 4; ++c) {
        uint64_t sum = a_counter[static_cast<size_t>(c)];
        for (int v : children) sum += ball.of(v).class_shares[static_cast<size_t>(c)];
        if (own.class_shares[static_cast<size_t>(c)] != sum)
            return fail(reason, "counter share mismatch");
        if (self == own.root_id &&
            own.class_totals[static_cast<size_t>(c)] != own.class_shares[static_cast<size_t>(c)])
            return fail(reason, "counter total mismatch");
    }

    // local special-edge view from the certificates
    CertSource src(self, own, ball.nbr);
    std::set<Edge> fbad_local, e33_local;
    auto note_classes = [&](const Cert& c, int owner) {
        for (size_t i = 0; i < c.neighbors.size(); ++i) {
            Edge e = make_edge(owner, c.neighbors[i]);
            if (c.edge_class[i] == 2) fbad_local.insert(e);
            if (layer[owner] == 3 && layer[c.neighbors[i]] == 3) e33_local.insert(e);
        }
    };
    note_classes(own, self);
    for (size_t i = 0; i < ball.nbr.size(); ++i) note_classes(ball.nbr[i], own.neighbors[i]);

    p5::NodeView view(self, src, layer, fbad_local, e33_local);
    if (p5::node_detects_special_path(view))
        return fail(reason, "induced path through a bad edge");

    // dangerous-copy recount for the copies designated to this node
    std::vector<uint64_t> a_pattern(npat, 0);
    if (!fbad_local.empty() || !e33_local.empty()) {
        const auto& cat = pattern_catalog();
        const uint16_t kPathCanon = canon5_of(path_graph(5));
        const uint16_t kCycleCanon = canon5_of(cycle_graph(5));
        const auto& uni = view.universe();
        int un = static_cast<int>(uni.size());
        int idxs[5];
        for (idxs[0] = 0; idxs[0] < un - 4; ++idxs[0])
            for (idxs[1] = idxs[0] + 1; idxs[1] < un - 3; ++idxs[1])
                for (idxs[2] = idxs[1] + 1; idxs[2] < un - 2; ++idxs[2])
                    for (idxs[3] = idxs[2] + 1; idxs[3] < un - 1; ++idxs[3])
                        for (idxs[4] = idxs[3] + 1; idxs[4] < un; ++idxs[4]) {
                            int nodes[5];
                            for (int t = 0; t < 5; ++t) nodes[t] = uni[idxs[t]];
                            uint16_t mask = 0;
                            bool known = true;
                            for (int i = 0; i < 5 && known; ++i)
                                for (int j = i + 1; j < 5; ++j) {
                                    auto st = view.direct(nodes[i], nodes[j]);
                                    if (st == p5::NodeView::kUnknown) {
                                        known = false;
                                        break;
                                    }
                                    if (st == p5::NodeView::kEdge)
                                        mask |= static_cast<uint16_t>(1u << kPair5[i][j]);
                                }
                            if (!known) continue;
                            if (std::popcount(static_cast<unsigned>(mask)) < 5) continue;
                            uint16_t special_bits = 0;
                            for (int i = 0; i < 5; ++i)
                                for (int j = i + 1; j < 5; ++j)
                                    if ((mask >> kPair5[i][j]) & 1) {
                                        Edge e = make_edge(nodes[i], nodes[j]);
                                        if (fbad_local.count(e) || e33_local.count(e))
                                            special_bits |= static_cast<uint16_t>(1u << kPair5[i][j]);
                                    }
                            if (!special_bits) continue;
                            uint16_t reduced = mask & static_cast<uint16_t>(~special_bits);
                            if (std::popcount(static_cast<unsigned>(reduced)) != 4) continue;
                            if (canon5(reduced) != kPathCanon) continue;
                            uint16_t pc = canon5(mask);
                            int idx = cat.index_of(pc);
                            if (idx < 0) continue;
                            int designated = -1;
                            if (pc == kCycleCanon) {
                                int a = -1, b = -1;
                                for (int i = 0; i < 5 && a < 0; ++i)
                                    for (int j = i + 1; j < 5; ++j)
                                        if ((special_bits >> kPair5[i][j]) & 1) {
                                            a = nodes[i];
                                            b = nodes[j];
                                            break;
                                        }
                                if (a >= 0 && fbad_local.count(make_edge(a, b))) {
                                    for (int y : src.neighbors(a))
                                        if (layer[y] == 1 && (designated < 0 || y < designated))
                                            designated = y;
                                }
                            } else {
                                for (int i = 0; i < 5; ++i) {
                                    int deg = 0;
                                    for (int j = 0; j < 5; ++j)
                                        if (j != i && ((mask >> kPair5[std::min(i, j)][std::max(i, j)]) & 1))
                                            ++deg;
                                    if (deg >= 3 && (designated < 0 || nodes[i] < designated))
                                        designated = nodes[i];
                                }
                            }
                            if (designated == self) a_pattern[static_cast<size_t>(idx)]++;
                        }
    }
    for (size_t i = 0; i < npat; ++i) {
        uint64_t sum = a_pattern[i];
        for (int v : children) sum += ball.of(v).pattern_shares[i];
        if (own.pattern_shares[i] != sum) return fail(reason, "pattern share mismatch");
        if (self == own.root_id && own.pattern_totals[i] != own.pattern_shares[i])
            return fail(reason, "pattern total mismatch");
    }

    // assigned-edges checks
    bool should_label = false;
    for (int k = 1; k < static_cast<int>(labels.size()); ++k)
        if (labels[k] == self) should_label = true;
    if (own.labeled != should_label) return fail(reason, "label flag mismatch");
    if (own.labeled) {
        int my_k = -1;
        for (int k = 1; k < static_cast<int>(labels.size()); ++k)
            if (labels[k] == self) my_k = k;
        int gi = (my_k - 1) % s + 1, gj = (my_k - 1) / s + 1;
        std::set<int> ball2;
        ball2.insert(self);
        for (size_t i = 0; i < own.neighbors.size(); ++i) {
            ball2.insert(own.neighbors[i]);
            for (int x : ball.nbr[i].neighbors) ball2.insert(x);
        }
        if (!std::is_sorted(own.payload.begin(), own.payload.end()) ||
            std::adjacent_find(own.payload.begin(), own.payload.end()) != own.payload.end())
            return fail(reason, "payload not canonical");
        for (auto& [a, b] : own.payload) {
            if (gi > gj) return fail(reason, "label pair invalid");
            int pa = std::min(own.group[a], own.group[b]);
            int pb = std::max(own.group[a], own.group[b]);
            if (pa != gi || pb != gj) return fail(reason, "payload edge outside assigned pair");
            if (!ball2.count(a) && !ball2.count(b))
                return fail(reason, "payload edge too far from label");
        }
    }
    // non-edge cross-check against neighbors' payloads
    for (size_t i = 0; i < ball.nbr.size(); ++i) {
        const Cert& cv = ball.nbr[i];
        if (!cv.labeled) continue;
        for (auto& [a, b] : cv.payload) {
            if (a == self || ball.is_nbr(a)) {
                const auto& an = a == self ? own.neighbors : ball.of(a).neighbors;
                if (std::find(an.begin(), an.end(), b) == an.end())
                    return fail(reason, "payload lists a non-edge");
            }
            if (b == self || ball.is_nbr(b)) {
                const auto& bn = b == self ? own.neighbors : ball.of(b).neighbors;
                if (std::find(bn.begin(), bn.end(), a) == bn.end())
                    return fail(reason, "payload lists a non-edge");
            }
        }
    }

    // the root: coverage check plus the final comparison
    if (self == own.root_id) {
        std::set<Edge> assembled;
        for (int v : own.neighbors) assembled.insert(make_edge(self, v));
        for (size_t i = 0; i < ball.nbr.size(); ++i)
            for (int w : ball.nbr[i].neighbors)
                assembled.insert(make_edge(own.neighbors[i], w));
        std::set<Edge> routed22, routed23;
        for (size_t i = 0; i < ball.nbr.size(); ++i) {
            if (!ball.nbr[i].labeled) continue;
            for (auto& e : ball.nbr[i].payload) {
                int lo = std::min(layer[e.first], layer[e.second]);
                int hi = std::max(layer[e.first], layer[e.second]);
                if (lo == 2 && hi == 2) routed22.insert(e);
                if (lo == 2 && hi == 3) routed23.insert(e);
                assembled.insert(e);
            }
        }
        if (2 * routed22.size() < own.class_totals[0])
            return fail(reason, "marked internal edges not covered");
        if (2 * routed23.size() < own.class_totals[2])
            return fail(reason, "cross-layer edges not covered");

        std::vector<std::pair<int, int>> edges(assembled.begin(), assembled.end());
        Graph local = Graph::from_edges(n, edges);
        uint64_t found = count_induced_copies_mask(local, canon5_of(path_graph(5)));
        uint64_t t = 0;
        for (uint64_t x : own.pattern_totals) t += x;
        if (found != t) return fail(reason, "final count mismatch");
    }
    return true;
}

VerifyResult verify(const Graph& g, const CertificateBundle& bundle) {
    VerifyResult r;
    int n = g.n();
    r.accept.assign(n, false);
    r.reasons.assign(n, "");
    if (bundle.n != n) {
        for (int u = 0; u < n; ++u) r.reasons[u] = "bundle size mismatch";
        return r;
    }
    for (int u = 0; u < n; ++u) {
        NodeInputs in;
        in.self = u;
        in.n = n;
        in.true_neighbors = g.neighbors(u);
        in.own_blob = &bundle.blob[u];
        in.own_bits = bundle.bits[u];
        for (int v : g.neighbors(u)) {
            in.nbr_blobs.push_back(&bundle.blob[v]);
            in.nbr_bits.push_back(bundle.bits[v]);
        }
        std::string why;
        r.accept[u] = verify_node(in, &why);
        r.reasons[u] = why;
    }
    r.all_accept = std::all_of(r.accept.begin(), r.accept.end(), [](bool b) { return b; });
    return r;
}

// ---------------------------------------------------------------------------
// sum sub-scheme

SumCertificate honest_sum_certificate(const sim::RootedTree& tree,
                                      const std::vector<uint64_t>& values) {
    int n = static_cast<int>(values.size());
    SumCertificate c;
    c.partial = values;
    std::vector<int> order(n);
    for (int u = 0; u < n; ++u) order[u] = u;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return tree.depth_of[a] > tree.depth_of[b]; });
    for (int u : order)
        if (tree.parent[u] >= 0) c.partial[tree.parent[u]] += c.partial[u];
    c.total = c.partial[tree.root];
    return c;
}

std::vector<bool> certify_sum(const sim::RootedTree& tree, const std::vector<uint64_t>& values,
                              const SumCertificate& cert) {
    int n = static_cast<int>(values.size());
    std::vector<std::vector<int>> children(n);
    for (int u = 0; u < n; ++u)
        if (tree.parent[u] >= 0) children[tree.parent[u]].push_back(u);
    std::vector<bool> ok(n, true);
    for (int u = 0; u < n; ++u) {
        uint64_t sum = values[u];
        for (int c : children[u]) sum += cert.partial[c];
        if (cert.partial[u] != sum) ok[u] = false;
        if (u == tree.root && cert.total != cert.partial[u]) ok[u] = false;
    }
    return ok;
}

// ---------------------------------------------------------------------------
// mutations and persistence

CertificateBundle mutate_bitflip(const CertificateBundle& b, uint64_t seed, int flips) {
    CertificateBundle out = b;
    Rng rng(seed);
    for (int f = 0; f < flips; ++f) {
        int u = static_cast<int>(rng.below(static_cast<uint64_t>(out.n)));
        if (out.bits[u] == 0) continue;
        size_t bit = static_cast<size_t>(rng.below(out.bits[u]));
        out.blob[u][bit / 8] ^= static_cast<uint8_t>(1u << (7 - bit % 8));
    }
    return out;
}

CertificateBundle mutate_semantic(const Graph& g, const CertificateBundle& b, uint64_t seed) {
    CertificateBundle out = b;
    Rng rng(seed);
    int u = static_cast<int>(rng.below(static_cast<uint64_t>(out.n)));
    Cert c;
    try {
        c = decode_cert(out.blob[u], out.bits[u], out.n);
    } catch (...) {
        return mutate_bitflip(b, seed ^ 0x5a5a, 1);
    }
    int kind = static_cast<int>(rng.below(10));
    auto rand_node = [&]() { return static_cast<int>(rng.below(static_cast<uint64_t>(out.n))); };
    switch (kind) {
    case 0: // drop a neighbor
        if (!c.neighbors.empty()) {
            size_t i = static_cast<size_t>(rng.below(c.neighbors.size()));
            c.neighbors.erase(c.neighbors.begin() + static_cast<long>(i));
            c.edge_flags.erase(c.edge_flags.begin() + static_cast<long>(i));
            c.edge_class.erase(c.edge_class.begin() + static_cast<long>(i));
        }
        break;
    case 1: { // insert a fake neighbor
        int v = rand_node();
        if (std::find(c.neighbors.begin(), c.neighbors.end(), v) == c.neighbors.end() && v != u) {
            c.neighbors.push_back(v);
            c.edge_flags.push_back(0);
            c.edge_class.push_back(0);
            std::vector<size_t> idx(c.neighbors.size());
            for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
            std::sort(idx.begin(), idx.end(),
                      [&](size_t a, size_t bb) { return c.neighbors[a] < c.neighbors[bb]; });
            auto n2 = c.neighbors;
            auto f2 = c.edge_flags;
            auto k2 = c.edge_class;
            for (size_t i = 0; i < idx.size(); ++i) {
                c.neighbors[i] = n2[idx[i]];
                c.edge_flags[i] = f2[idx[i]];
                c.edge_class[i] = k2[idx[i]];
            }
        }
        break;
    }
    case 2: // perturb a distance entry
        c.dist_self[static_cast<size_t>(rand_node())] ^= 1;
        break;
    case 3: // perturb the shared root vector
        c.dist_root[static_cast<size_t>(rand_node())] ^= 1;
        break;
    case 4: // partition reassignment
        if (c.groups >= 1) {
            int v = rand_node();
            c.group[static_cast<size_t>(v)] = 1 + static_cast<int>(rng.below(
                                                      static_cast<uint64_t>(c.groups)));
        }
        break;
    case 5: // counter perturbation
        c.class_totals[rng.below(4)] += 1;
        break;
    case 6:
        c.class_shares[rng.below(4)] += 1;
        break;
    case 7: // pattern count perturbation
        c.pattern_totals[rng.below(c.pattern_totals.size())] += 1;
        break;
    case 8:
        if (!c.edge_class.empty()) {
            size_t i = rng.below(c.edge_class.size());
            c.edge_class[i] = static_cast<uint8_t>((c.edge_class[i] + 1) % 3);
        }
        break;
    case 9: // payload tampering
        if (c.labeled && !c.payload.empty() && rng.coin(0.5)) {
            c.payload.erase(c.payload.begin() +
                            static_cast<long>(rng.below(c.payload.size())));
        } else {
            int a = rand_node(), bnode = rand_node();
            if (a != bnode) {
                c.labeled = true;
                c.payload.push_back(make_edge(a, bnode));
                std::sort(c.payload.begin(), c.payload.end());
                c.payload.erase(std::unique(c.payload.begin(), c.payload.end()), c.payload.end());
            }
        }
        break;
    }
    out.blob[u] = encode_cert(c);
    out.bits[u] = encoded_bits(c);
    return out;
}

void save_bundle(const CertificateBundle& b, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    uint32_t n = static_cast<uint32_t>(b.n);
    out.write("PLB1", 4);
    out.write(reinterpret_cast<const char*>(&n), 4);
    for (int u = 0; u < b.n; ++u) {
        uint64_t bits = b.bits[u];
        uint32_t len = static_cast<uint32_t>(b.blob[u].size());
        out.write(reinterpret_cast<const char*>(&bits), 8);
        out.write(reinterpret_cast<const char*>(&len), 4);
        out.write(reinterpret_cast<const char*>(b.blob[u].data()), len);
    }
}

CertificateBundle load_bundle(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    char magic[4];
    in.read(magic, 4);
    if (std::string(magic, 4) != "PLB1") throw std::runtime_error("bad bundle file");
    uint32_t n = 0;
    in.read(reinterpret_cast<char*>(&n), 4);
    CertificateBundle b;
    b.n = static_cast<int>(n);
    b.blob.resize(n);
    b.bits.resize(n);
    for (uint32_t u = 0; u < n; ++u) {
        uint64_t bits = 0;
        uint32_t len = 0;
        in.read(reinterpret_cast<char*>(&bits), 8);
        in.read(reinterpret_cast<char*>(&len), 4);
        b.bits[u] = bits;
        b.blob[u].resize(len);
        in.read(reinterpret_cast<char*>(b.blob[u].data()), len);
        if (!in) throw std::runtime_error("truncated bundle file");
    }
    return b;
}

} // namespace pathlab::cert

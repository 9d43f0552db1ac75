#include "pathlab/p5.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace pathlab::p5 {

using sim::Inbox;
using sim::LocalView;
using sim::Message;
using sim::NodeProgram;
using sim::Outbox;
using sim::Transcript;

namespace {

int layer_of_edge(const std::vector<int>& layer, const Edge& e) {
    int a = layer[e.first], b = layer[e.second];
    if (a > b) std::swap(a, b);
    return a * 10 + b; // 22, 23, 33, ...
}

// ---------------------------------------------------------------------------
// shared prelude: exact diameter, root election, layers, tree, edge count

struct Prelude {
    std::vector<Transcript> phases;
    bool disconnected = false;
    int diam = -1;
    int root = -1;
    long long m = 0;
    std::vector<int> layer;
    sim::RootedTree tree;
};

Prelude run_prelude(const Graph& g, const P5Config& cfg) {
    Prelude p;
    auto net = cfg.net(g.n());
    auto waves = sim::all_bfs_waves(g, net);
    if (!waves.connected) {
        p.disconnected = true;
        p.phases.push_back(std::move(waves.transcript));
        return p;
    }
    p.diam = 0;
    for (int e : waves.ecc) p.diam = std::max(p.diam, e);

    auto elect = sim::elect_max_degree(g, p.diam + 1, net);
    p.root = elect.root;
    p.layer.resize(g.n());
    for (int u = 0; u < g.n(); ++u) p.layer[u] = waves.dist[u][p.root];
    p.tree = sim::bfs_tree(g, p.root);

    std::vector<uint64_t> degs(g.n());
    for (int u = 0; u < g.n(); ++u) degs[u] = static_cast<uint64_t>(g.degree(u));
    int mbits = 2 * id_bits(g.n()) + 1;
    auto cc = sim::convergecast_sum(g, p.tree, degs, mbits, net);
    p.m = static_cast<long long>(cc.root_sum / 2);
    std::vector<std::vector<uint64_t>> items(g.n());
    items[p.root] = {cc.root_sum / 2};
    auto bc = sim::pipeline_broadcast(g, items, mbits, net);

    p.phases.push_back(std::move(waves.transcript));
    p.phases.push_back(std::move(elect.transcript));
    p.phases.push_back(std::move(cc.transcript));
    p.phases.push_back(std::move(bc.transcript));
    return p;
}

// ---------------------------------------------------------------------------
// group partition: private draws, shared by gossip, resampled while some
// group pair holds too many edges

struct PartitionPhase {
    std::vector<int> group; // 1..s, 0 = not participating
    int groups = 1;
    bool aborted = false;
    std::vector<Transcript> phases;
};

// nodes eligible for grouping draw a group; everyone learns (group, layer)
PartitionPhase draw_partition(const Graph& g, const P5Config& cfg, const Prelude& pre,
                              const std::vector<char>& eligible, long long pair_edges_m) {
    PartitionPhase ph;
    int n = g.n();
    int degree_budget = g.degree(pre.root);
    int s = std::max(1, static_cast<int>(std::ceil(
                            std::sqrt(static_cast<double>(pair_edges_m) / std::max(1, n)))));
    s = std::min(s, std::max(1, static_cast<int>(std::floor(std::sqrt(
                                    static_cast<double>(std::max(1, degree_budget)))))));
    ph.groups = s;
    int gbits = bits_for(static_cast<uint64_t>(s));

    for (int attempt = 0;; ++attempt) {
        if (attempt > cfg.partition_retries) {
            ph.aborted = true;
            return ph;
        }
        ph.group.assign(n, 0);
        for (int u = 0; u < n; ++u)
            if (eligible[u]) {
                Rng rng(mix64(cfg.seed, 0x6a0b1ULL + static_cast<uint64_t>(attempt) * 131071 +
                                            static_cast<uint64_t>(u)));
                ph.group[u] = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(s)));
            }

        // share (group, layer) with everyone
        std::vector<std::vector<uint64_t>> items(n);
        for (int u = 0; u < n; ++u)
            items[u] = {static_cast<uint64_t>(ph.group[u]) * 4 +
                        static_cast<uint64_t>(pre.layer[u])};
        auto bc = sim::pipeline_broadcast(g, items, gbits + 2, cfg.net(n));
        ph.phases.push_back(std::move(bc.transcript));

        // per-pair congestion bound of the random sampling
        std::map<std::pair<int, int>, long long> pair_count;
        for (auto [u, v] : g.edges()) {
            if (!ph.group[u] || !ph.group[v]) continue;
            int i = std::min(ph.group[u], ph.group[v]);
            int j = std::max(ph.group[u], ph.group[v]);
            pair_count[{i, j}]++;
        }
        bool over = false;
        for (auto& [pr, cnt] : pair_count) {
            double mult = pr.first == pr.second ? 1.0 : 4.0;
            double bound =
                cfg.pair_bound_scale * 6.0 * mult * static_cast<double>(pair_edges_m) / (s * s);
            if (static_cast<double>(cnt) > bound) over = true;
        }
        if (!over) return ph;
    }
}

// labels: v_k is the k-th smallest id among the root's neighbors
std::vector<int> make_labels(const Graph& g, int root, int s) {
    std::vector<int> v1 = g.neighbors(root);
    std::vector<int> labels(static_cast<size_t>(s) * s + 1, -1);
    for (int k = 1; k <= s * s && k <= static_cast<int>(v1.size()); ++k) labels[k] = v1[k - 1];
    return labels;
}

int pair_to_k(int i, int j, int s) { return i + (j - 1) * s; } // i <= j

// ---------------------------------------------------------------------------
// routing: designated senders stream edge tokens to label nodes, which
// forward them to the root; one token per link per round with FIFO queues

struct RouteResult {
    Transcript transcript;
    std::set<Edge> at_root;
};

class RouteProgram : public NodeProgram {
public:
    RouteProgram(std::map<int, std::deque<Edge>> send_queues, bool is_label, bool is_root,
                 int root, std::set<Edge>* root_sink)
        : queues_(std::move(send_queues)), is_label_(is_label), is_root_(is_root), root_(root),
          sink_(root_sink) {}

    void init(const LocalView& v) override { width_ = id_bits(v.n); }

    void step(int64_t, const Inbox& inbox, Outbox& out) override {
        inbox.for_each([&](int, const Message& m) {
            Edge e = make_edge(static_cast<int>(m.at(0)), static_cast<int>(m.at(1)));
            if (is_root_) {
                sink_->insert(e);
            } else if (is_label_ && seen_.insert(e).second) {
                queues_[root_].push_back(e);
            }
        });
        for (auto& [target, q] : queues_) {
            if (q.empty()) continue;
            Edge e = q.front();
            q.pop_front();
            Message m;
            m.add(static_cast<uint64_t>(e.first), width_)
                .add(static_cast<uint64_t>(e.second), width_);
            out.send(target, std::move(m));
        }
    }

    bool done() const override {
        for (auto& [t, q] : queues_)
            if (!q.empty()) return false;
        return true;
    }

private:
    std::map<int, std::deque<Edge>> queues_;
    bool is_label_, is_root_;
    int root_;
    std::set<Edge>* sink_;
    std::set<Edge> seen_;
    int width_ = 0;
};

// send_lists[u]: (label node, edge) in emission order, deduplicated
RouteResult route_edges(const Graph& g, const P5Config& cfg,
                        const std::vector<std::vector<std::pair<int, Edge>>>& send_lists,
                        const std::vector<char>& is_label, int root) {
    RouteResult r;
    auto factory = [&](int u) {
        std::map<int, std::deque<Edge>> queues;
        std::set<std::pair<int, Edge>> dedup;
        for (auto& [target, e] : send_lists[u])
            if (dedup.insert({target, e}).second) {
                if (target == u && is_label[u]) {
                    // a label node already holding the edge forwards it itself
                    queues[root].push_back(e);
                } else if (target != u) {
                    queues[target].push_back(e);
                }
            }
        return std::make_unique<RouteProgram>(std::move(queues), is_label[u], u == root, root,
                                              &r.at_root);
    };
    r.transcript = sim::run(factory, g, cfg.net(g.n()));
    return r;
}

// per-node flag for the reachability half of the marked-edge rule: some
// known neighbor of u is adjacent to the pair's label node
bool cond1_half(const Graph& g, int u, int vk) {
    if (vk < 0) return false;
    for (int w : g.neighbors(u))
        if (g.has_edge(w, vk)) return true;
    return false;
}

// one-round unicast exchange of the per-edge flags
class FlagExchangeProgram : public NodeProgram {
public:
    explicit FlagExchangeProgram(std::vector<std::pair<int, bool>> flags)
        : flags_(std::move(flags)) {}
    void init(const LocalView&) override {}
    void step(int64_t round, const Inbox&, Outbox& out) override {
        if (round == 1)
            for (auto& [to, f] : flags_) {
                Message m;
                m.add(f ? 1 : 0, 1);
                out.send(to, std::move(m));
            }
        finished_ = round >= 2;
    }
    bool done() const override { return finished_; }

private:
    std::vector<std::pair<int, bool>> flags_;
    bool finished_ = false;
};

// stream of (endpoint, class) tokens telling neighbors which incident edges
// are marked or bad
class ClassAnnounceProgram : public NodeProgram {
public:
    explicit ClassAnnounceProgram(std::vector<std::pair<int, int>> tokens)
        : tokens_(std::move(tokens)) {}
    void init(const LocalView& v) override { width_ = id_bits(v.n); }
    void step(int64_t, const Inbox&, Outbox& out) override {
        if (next_ < tokens_.size()) {
            Message m;
            m.add(static_cast<uint64_t>(tokens_[next_].first), width_)
                .add(static_cast<uint64_t>(tokens_[next_].second), 2);
            ++next_;
            out.broadcast(std::move(m));
        }
    }
    bool done() const override { return next_ >= tokens_.size(); }

private:
    std::vector<std::pair<int, int>> tokens_;
    size_t next_ = 0;
    int width_ = 0;
};

} // namespace

EdgeClasses classify_edges(const Graph& g, const std::vector<int>& layer,
                           const std::vector<int>& group, int groups,
                           const std::vector<int>& labels) {
    EdgeClasses out;
    auto vk_of_edge = [&](const Edge& e) {
        int i = std::min(group[e.first], group[e.second]);
        int j = std::max(group[e.first], group[e.second]);
        if (i <= 0) return -1;
        return labels[pair_to_k(i, j, groups)];
    };
    auto v1_neighborhood = [&](int u) {
        std::vector<int> nb;
        for (int w : g.neighbors(u))
            if (layer[w] == 1) nb.push_back(w);
        return nb;
    };
    for (auto [u, v] : g.edges()) {
        Edge e = make_edge(u, v);
        int lc = layer_of_edge(layer, e);
        if (lc == 33) out.e33.insert(e);
        if (lc != 22) continue;
        int vk = vk_of_edge(e);
        bool fu = cond1_half(g, e.first, vk);
        bool fv = cond1_half(g, e.second, vk);
        out.cond1_flags[e] = {fu, fv};
        bool v3_contact = false;
        for (int w : g.neighbors(e.first))
            if (layer[w] == 3) v3_contact = true;
        for (int w : g.neighbors(e.second))
            if (layer[w] == 3) v3_contact = true;
        if (fu || fv || v3_contact) {
            out.tilde22.insert(e);
        } else if (v1_neighborhood(e.first) == v1_neighborhood(e.second)) {
            out.fbad.insert(e);
        } else {
            out.cond2_fired = true;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// p_collect

CollectState p_collect(const Graph& g, const P5Config& cfg) {
    CollectState st;
    int n = g.n();
    auto net = cfg.net(n);
    std::vector<Transcript> phases;

    Prelude pre = run_prelude(g, cfg);
    for (auto& t : pre.phases) phases.push_back(std::move(t));
    st.root = pre.root;
    st.layer = pre.layer;

    // Step 1: every node tells its neighbors its neighbor list
    auto ex = sim::exchange_neighbor_lists(g, net);
    phases.push_back(std::move(ex.transcript));
    st.nbr_lists = std::move(ex.lists);

    // Step 2: partition of V into groups plus labels on the root's neighbors
    std::vector<char> eligible(n, 1);
    auto part = draw_partition(g, cfg, pre, eligible, pre.m);
    for (auto& t : part.phases) phases.push_back(std::move(t));
    if (part.aborted) {
        st.aborted = true;
        st.transcript = sim::combine(std::move(phases));
        return st;
    }
    st.group = part.group;
    st.groups = part.groups;
    st.labels = make_labels(g, st.root, st.groups);

    // Step 3: marked and bad subsets of the layer-2 internal edges
    auto classes = classify_edges(g, st.layer, st.group, st.groups, st.labels);
    st.tilde22 = std::move(classes.tilde22);
    st.fbad = std::move(classes.fbad);
    st.e33 = std::move(classes.e33);
    // the per-edge flag exchange behind the classification (one round)
    std::vector<std::vector<std::pair<int, bool>>> to_send(n);
    for (auto& [e, fl] : classes.cond1_flags) {
        to_send[e.first].push_back({e.second, fl.first});
        to_send[e.second].push_back({e.first, fl.second});
    }
    phases.push_back(sim::run(
        [&](int u) { return std::make_unique<FlagExchangeProgram>(to_send[u]); }, g, net));
    if (classes.cond2_fired) {
        st.rejected = true; // Condition 2
        st.reject_condition = 2;
    }
    auto v1_neighborhood = [&](int u) {
        std::vector<int> out;
        for (int w : g.neighbors(u))
            if (st.layer[w] == 1) out.push_back(w);
        return out;
    };

    // neighbors learn the marked/bad classification of incident edges
    std::vector<std::vector<std::pair<int, int>>> announce(n);
    for (const Edge& e : st.tilde22) {
        announce[e.first].push_back({e.second, 1});
        announce[e.second].push_back({e.first, 1});
    }
    for (const Edge& e : st.fbad) {
        announce[e.first].push_back({e.second, 2});
        announce[e.second].push_back({e.first, 2});
    }
    phases.push_back(sim::run(
        [&](int u) { return std::make_unique<ClassAnnounceProgram>(announce[u]); }, g, net));

    // Step 4: stream group-pair edges through label nodes to the root
    auto vk_of_edge = [&](const Edge& e) {
        int i = std::min(st.group[e.first], st.group[e.second]);
        int j = std::max(st.group[e.first], st.group[e.second]);
        if (i <= 0) return -1;
        return st.labels[pair_to_k(i, j, st.groups)];
    };
    std::vector<char> is_label(n, 0);
    for (int k = 1; k < static_cast<int>(st.labels.size()); ++k)
        if (st.labels[k] >= 0) is_label[st.labels[k]] = 1;
    std::vector<std::vector<std::pair<int, Edge>>> send_lists(n);
    for (int w = 0; w < n; ++w) {
        // edges w knows from step 1: incident to N[w]
        std::set<Edge> known;
        for (int a : g.neighbors(w)) {
            known.insert(make_edge(w, a));
            for (int b : g.neighbors(a)) known.insert(make_edge(a, b));
        }
        for (const Edge& e : known) {
            int vk = vk_of_edge(e);
            if (vk < 0) continue;
            if (vk == w || g.has_edge(w, vk)) send_lists[w].push_back({vk, e});
        }
    }
    auto routed = route_edges(g, cfg, send_lists, is_label, st.root);
    phases.push_back(std::move(routed.transcript));

    // the root's final knowledge
    for (int w : g.neighbors(st.root)) {
        st.edges_at_r.insert(make_edge(st.root, w));
        for (int b : g.neighbors(w)) st.edges_at_r.insert(make_edge(w, b));
    }
    for (const Edge& e : routed.at_root) {
        int lc = layer_of_edge(st.layer, e);
        if (lc == 22 || lc == 23) st.edges_at_r.insert(e);
    }

    // Step 5: counts move to the root along the tree, then the conditions
    long long m23 = 0;
    for (auto [u, v] : g.edges())
        if (layer_of_edge(st.layer, make_edge(u, v)) == 23) ++m23;
    {
        auto incidence_sum = [&](const std::set<Edge>& edges) {
            std::vector<uint64_t> a(n, 0);
            for (const Edge& e : edges) {
                a[e.first]++;
                a[e.second]++;
            }
            return a;
        };
        int vbits = id_bits(n) + 2;
        std::vector<uint64_t> a23(n, 0);
        for (auto [u, v] : g.edges())
            if (layer_of_edge(st.layer, make_edge(u, v)) == 23) {
                a23[u]++;
                a23[v]++;
            }
        auto c1 = sim::convergecast_sum(g, pre.tree, a23, vbits + id_bits(n), net);
        auto c2 = sim::convergecast_sum(g, pre.tree, incidence_sum(st.tilde22),
                                        vbits + id_bits(n), net);
        auto c3 = sim::convergecast_sum(g, pre.tree, incidence_sum(st.fbad), vbits + id_bits(n),
                                        net);
        phases.push_back(std::move(c1.transcript));
        phases.push_back(std::move(c2.transcript));
        phases.push_back(std::move(c3.transcript));
    }

    if (!st.rejected) {
        // Condition 1: some marked or cross-layer edge never reached the root
        long long got23 = 0, got_tilde = 0;
        for (const Edge& e : routed.at_root) {
            int lc = layer_of_edge(st.layer, e);
            if (lc == 23) ++got23;
            if (lc == 22 && st.tilde22.count(e)) ++got_tilde;
        }
        if (got23 < m23 || got_tilde < static_cast<long long>(st.tilde22.size())) {
            st.rejected = true;
            st.reject_condition = 1;
        }
    }
    if (!st.rejected) {
        // Condition 3
        for (const Edge& e : st.fbad) {
            for (int endpoint : {e.first, e.second}) {
                auto t = v1_neighborhood(endpoint);
                for (int w : g.neighbors(endpoint)) {
                    if (st.layer[w] != 2) continue;
                    for (int y : t)
                        if (!g.has_edge(y, w) && y != w) {
                            st.rejected = true;
                            st.reject_condition = 3;
                        }
                }
            }
            if (st.rejected) break;
        }
    }
    if (!st.rejected) {
        // Condition 4
        auto v2_neighborhood = [&](int u) {
            std::vector<int> out;
            for (int w : g.neighbors(u))
                if (st.layer[w] == 2) out.push_back(w);
            return out;
        };
        for (const Edge& e : st.e33)
            if (v2_neighborhood(e.first) != v2_neighborhood(e.second)) {
                st.rejected = true;
                st.reject_condition = 4;
                break;
            }
    }

    st.transcript = sim::combine(std::move(phases));
    return st;
}

// ---------------------------------------------------------------------------
// NodeView

NodeView::NodeView(int self, const AdjacencySource& adj, const std::vector<int>& layer,
                   const std::set<Edge>& fbad, const std::set<Edge>& e33)
    : self_(self), adj_(adj), layer_(layer), fbad_(fbad), e33_(e33) {
    ball1_.insert(self);
    for (int w : adj.neighbors(self)) ball1_.insert(w);
    std::set<int> uni(ball1_.begin(), ball1_.end());
    for (int w : adj.neighbors(self))
        for (int x : adj.neighbors(w)) uni.insert(x);
    universe_.assign(uni.begin(), uni.end());
    for (const Edge& e : fbad_)
        if (ball1_.count(e.first) || ball1_.count(e.second)) known_specials_.push_back(e);
    for (const Edge& e : e33_)
        if (ball1_.count(e.first) || ball1_.count(e.second)) known_specials_.push_back(e);
}

NodeView::Status NodeView::direct(int a, int b) const {
    if (a == b) return kNonEdge;
    if (ball1_.count(a) || ball1_.count(b)) return adj_.edge(a, b) ? kEdge : kNonEdge;
    return kUnknown;
}

bool NodeView::knows_special(int a, int b) const {
    Edge e = make_edge(a, b);
    if (!fbad_.count(e) && !e33_.count(e)) return false;
    return ball1_.count(a) > 0 || ball1_.count(b) > 0;
}

NodeView::Status NodeView::infer(int a, int b) const {
    Status d = direct(a, b);
    if (d != kUnknown) return d;
    // consequences of the bad-edge properties, using only bad edges this
    // node can see
    for (const Edge& e : known_specials_) {
        if (!fbad_.count(e)) continue;
        for (auto [x, partner] : {std::pair{e.first, e.second}, std::pair{e.second, e.first}}) {
            for (auto [p, q] : {std::pair{a, b}, std::pair{b, a}}) {
                if (p != x) continue;
                // endpoints of a bad edge have no layer-3 neighbors
                if (layer_[q] == 3) return kNonEdge;
                if (!ball1_.count(partner)) continue;
                // equal layer-1 neighborhoods across the bad edge
                if (layer_[q] == 1) return direct(partner, q);
                // every layer-2 contact contains the shared layer-1 set
                if (layer_[q] == 2) {
                    for (int t : adj_.neighbors(partner))
                        if (layer_[t] == 1 && direct(t, q) == kNonEdge) return kNonEdge;
                }
            }
        }
    }
    return kUnknown;
}

// ---------------------------------------------------------------------------
// special-path detection

namespace {

// paths through a known special edge, grown from certified facts only
struct PathSearchLocal {
    const NodeView& view;
    std::deque<int> seq;
    bool found = false;

    explicit PathSearchLocal(const NodeView& v) : view(v) {}

    std::vector<int> candidates(int endpoint) const {
        std::vector<int> out;
        for (int x : view.universe())
            if (view.direct(endpoint, x) == NodeView::kEdge) out.push_back(x);
        return out;
    }

    bool consistent(int c, bool at_back) const {
        if (std::find(seq.begin(), seq.end(), c) != seq.end()) return false;
        int touch = at_back ? seq.back() : seq.front();
        if (view.direct(touch, c) != NodeView::kEdge) return false;
        for (int x : seq) {
            if (x == touch) continue;
            if (view.infer(x, c) != NodeView::kNonEdge) return false;
        }
        return true;
    }

    void grow(int need_front, int need_back) {
        if (found) return;
        if (need_front == 0 && need_back == 0) {
            found = true;
            return;
        }
        if (need_back > 0) {
            for (int c : candidates(seq.back())) {
                if (!consistent(c, true)) continue;
                seq.push_back(c);
                grow(need_front, need_back - 1);
                seq.pop_back();
                if (found) return;
            }
            return;
        }
        for (int c : candidates(seq.front())) {
            if (!consistent(c, false)) continue;
            seq.push_front(c);
            grow(need_front - 1, 0);
            seq.pop_front();
            if (found) return;
        }
    }

    bool search() {
        for (const Edge& e : view.known_specials()) {
            for (auto [a, b] : {std::pair{e.first, e.second}, std::pair{e.second, e.first}}) {
                for (int left = 0; left <= 3; ++left) {
                    seq = {a, b};
                    grow(left, 3 - left);
                    if (found) return true;
                }
            }
        }
        return false;
    }
};

} // namespace

bool node_detects_special_path(const NodeView& view) {
    if (view.known_specials().empty()) return false;
    PathSearchLocal search(view);
    return search.search();
}

DetectResult detect_special_paths(const Graph& g, const CollectState& st) {
    DetectResult res;
    if (st.fbad.empty() && st.e33.empty()) return res;
    int n = g.n();
    GraphSource src(g);
    std::vector<char> hit(n, 0);
#pragma omp parallel for schedule(dynamic)
    for (int v = 0; v < n; ++v) {
        NodeView view(v, src, st.layer, st.fbad, st.e33);
        if (node_detects_special_path(view)) hit[v] = 1;
    }
    for (int v = 0; v < n; ++v)
        if (hit[v]) {
            res.found = true;
            res.detectors.push_back(v);
        }
    return res;
}

// ---------------------------------------------------------------------------
// dangerous-copy counting

namespace {

constexpr int kPair5[5][5] = {
    {-1, 0, 1, 2, 3}, {0, -1, 4, 5, 6}, {1, 4, -1, 7, 8}, {2, 5, 7, -1, 9}, {3, 6, 8, 9, -1}};

} // namespace

DangerousCounts count_dangerous_core(const Graph& g, const std::vector<int>& layer,
                                     const std::set<Edge>& fbad, const std::set<Edge>& e33) {
    DangerousCounts res;
    const auto& cat = pattern_catalog();
    res.per_pattern.assign(cat.patterns.size(), 0);
    res.per_node_pattern.assign(cat.patterns.size(), std::vector<uint64_t>(g.n(), 0));
    const uint16_t kPathCanon = canon5_of(path_graph(5));
    const uint16_t kCycleCanon = canon5_of(cycle_graph(5));

    auto special = [&](int a, int b) {
        Edge e = make_edge(a, b);
        return fbad.count(e) > 0 || e33.count(e) > 0;
    };

    int n = g.n();
    auto& per_node_pattern = res.per_node_pattern;
    bool anomaly = false;
    int nodes[5];
    for (nodes[0] = 0; nodes[0] < n - 4; ++nodes[0])
        for (nodes[1] = nodes[0] + 1; nodes[1] < n - 3; ++nodes[1])
            for (nodes[2] = nodes[1] + 1; nodes[2] < n - 2; ++nodes[2])
                for (nodes[3] = nodes[2] + 1; nodes[3] < n - 1; ++nodes[3])
                    for (nodes[4] = nodes[3] + 1; nodes[4] < n; ++nodes[4]) {
                        uint16_t mask = g.induced_mask5(nodes);
                        if (std::popcount(static_cast<unsigned>(mask)) < 5) continue;
                        uint16_t special_bits = 0;
                        for (int i = 0; i < 5; ++i)
                            for (int j = i + 1; j < 5; ++j)
                                if ((mask >> kPair5[i][j]) & 1 && special(nodes[i], nodes[j]))
                                    special_bits |= static_cast<uint16_t>(1u << kPair5[i][j]);
                        if (!special_bits) continue;
                        uint16_t reduced = mask & static_cast<uint16_t>(~special_bits);
                        if (std::popcount(static_cast<unsigned>(reduced)) != 4) continue;
                        if (canon5(reduced) != kPathCanon) continue;
                        // dangerous copy
                        uint16_t pc = canon5(mask);
                        int idx = cat.index_of(pc);
                        if (idx < 0) {
                            anomaly = true;
                            continue;
                        }
                        int designated = -1;
                        if (pc == kCycleCanon) {
                            // the single bad edge's endpoints share their
                            // layer-1 neighborhood; its minimum id counts
                            int a = -1, b = -1;
                            for (int i = 0; i < 5 && a < 0; ++i)
                                for (int j = i + 1; j < 5; ++j)
                                    if ((special_bits >> kPair5[i][j]) & 1) {
                                        a = nodes[i];
                                        b = nodes[j];
                                        break;
                                    }
                            if (a >= 0 && fbad.count(make_edge(a, b))) {
                                for (int y : g.neighbors(a))
                                    if (layer[y] == 1 && (designated < 0 || y < designated))
                                        designated = y;
                            }
                        } else {
                            // minimum-id pattern node adjacent to at least
                            // three pattern nodes
                            for (int i = 0; i < 5; ++i) {
                                int deg = 0;
                                for (int j = 0; j < 5; ++j)
                                    if (j != i && g.has_edge(nodes[i], nodes[j])) ++deg;
                                if (deg >= 3 && (designated < 0 || nodes[i] < designated))
                                    designated = nodes[i];
                            }
                        }
                        if (designated < 0) {
                            anomaly = true;
                        } else {
                            per_node_pattern[static_cast<size_t>(idx)][designated]++;
                        }
                    }
    res.non_catalog = anomaly;
    for (size_t i = 0; i < cat.patterns.size(); ++i) {
        for (int u = 0; u < n; ++u) res.per_pattern[i] += per_node_pattern[i][u];
        res.t += res.per_pattern[i];
    }
    return res;
}

CountResult count_dangerous(const Graph& g, const CollectState& st, const P5Config& cfg) {
    CountResult res;
    auto core = count_dangerous_core(g, st.layer, st.fbad, st.e33);
    res.t = core.t;
    res.per_pattern = core.per_pattern;
    res.non_catalog_dangerous = core.non_catalog;
    res.per_node.assign(g.n(), 0);
    for (auto& row : core.per_node_pattern)
        for (int u = 0; u < g.n(); ++u) res.per_node[u] += row[u];

    // one convergecast per pattern reports the counts to the root
    sim::RootedTree tree = sim::bfs_tree(g, st.root);
    auto net = cfg.net(g.n());
    std::vector<Transcript> phases;
    for (size_t i = 0; i < res.per_pattern.size(); ++i) {
        int vbits = std::max(1, bits_for(std::max<uint64_t>(1, res.per_pattern[i])));
        auto cc = sim::convergecast_sum(g, tree, core.per_node_pattern[i], vbits, net);
        phases.push_back(std::move(cc.transcript));
    }
    res.transcript = sim::combine(std::move(phases));
    return res;
}

// ---------------------------------------------------------------------------
// decisions

namespace {

// every node streams its incident edges up the tree; the root reconstructs
// the whole graph
class SparseCollectProgram : public NodeProgram {
public:
    SparseCollectProgram(std::deque<Edge> tokens, int parent, bool is_root, std::set<Edge>* sink)
        : queue_(std::move(tokens)), parent_(parent), is_root_(is_root), sink_(sink) {}
    void init(const LocalView& v) override { width_ = id_bits(v.n); }
    void step(int64_t, const Inbox& inbox, Outbox& out) override {
        inbox.for_each([&](int, const Message& m) {
            Edge e = make_edge(static_cast<int>(m.at(0)), static_cast<int>(m.at(1)));
            if (is_root_)
                sink_->insert(e);
            else
                queue_.push_back(e);
        });
        if (!is_root_ && !queue_.empty()) {
            Edge e = queue_.front();
            queue_.pop_front();
            Message m;
            m.add(static_cast<uint64_t>(e.first), width_)
                .add(static_cast<uint64_t>(e.second), width_);
            out.send(parent_, std::move(m));
        }
    }
    bool done() const override { return is_root_ || queue_.empty(); }

private:
    std::deque<Edge> queue_;
    int parent_;
    bool is_root_;
    std::set<Edge>* sink_;
    int width_ = 0;
};

std::set<Edge> sparse_collect(const Graph& g, const sim::RootedTree& tree, const P5Config& cfg,
                              Transcript& transcript) {
    std::set<Edge> sink;
    auto factory = [&](int u) {
        std::deque<Edge> tokens;
        for (int w : g.neighbors(u))
            if (u < w) tokens.push_back({u, w});
        return std::make_unique<SparseCollectProgram>(std::move(tokens), tree.parent[u],
                                                      u == tree.root, &sink);
    };
    transcript = sim::run(factory, g, cfg.net(g.n()));
    // root's own incident edges
    for (int w : g.neighbors(tree.root)) sink.insert(make_edge(tree.root, w));
    return sink;
}

Graph graph_from_edge_set(int n, const std::set<Edge>& edges) {
    std::vector<std::pair<int, int>> e(edges.begin(), edges.end());
    return Graph::from_edges(n, e);
}

bool sparse_threshold(const Graph& g, const P5Config& cfg) {
    double ln = std::log(std::max(2, g.n()));
    return static_cast<double>(g.m()) <= cfg.sparse_constant * g.n() * ln * ln;
}

} // namespace

namespace {

P5Decision decide_diameter2_with(const Graph& g, const P5Config& cfg, Prelude pre) {
    P5Decision d;
    d.branch = "diam2";
    std::vector<Transcript> phases;
    for (auto& t : pre.phases) phases.push_back(std::move(t));
    d.diameter = pre.diam;
    if (g.n() < 5) {
        d.accept = true;
        d.transcript = sim::combine(std::move(phases));
        return d;
    }

    auto net = cfg.net(g.n());
    auto ex = sim::exchange_neighbor_lists(g, net);
    phases.push_back(std::move(ex.transcript));

    std::vector<char> eligible(g.n(), 0);
    long long m22 = 0;
    for (int u = 0; u < g.n(); ++u) eligible[u] = pre.layer[u] == 2;
    for (auto [u, v] : g.edges())
        if (pre.layer[u] == 2 && pre.layer[v] == 2) ++m22;
    auto part = draw_partition(g, cfg, pre, eligible, std::max(1LL, m22));
    for (auto& t : part.phases) phases.push_back(std::move(t));
    if (part.aborted) {
        d.aborted = true;
        d.transcript = sim::combine(std::move(phases));
        return d;
    }
    auto labels = make_labels(g, pre.root, part.groups);

    // route layer-2 internal edges through common neighbors to the labels
    std::vector<char> is_label(g.n(), 0);
    for (int k = 1; k < static_cast<int>(labels.size()); ++k)
        if (labels[k] >= 0) is_label[labels[k]] = 1;
    std::vector<std::vector<std::pair<int, Edge>>> send_lists(g.n());
    for (int w = 0; w < g.n(); ++w) {
        std::set<Edge> known;
        for (int a : g.neighbors(w)) {
            known.insert(make_edge(w, a));
            for (int b : g.neighbors(a)) known.insert(make_edge(a, b));
        }
        for (const Edge& e : known) {
            if (!(pre.layer[e.first] == 2 && pre.layer[e.second] == 2)) continue;
            int i = std::min(part.group[e.first], part.group[e.second]);
            int j = std::max(part.group[e.first], part.group[e.second]);
            if (i <= 0) continue;
            int vk = labels[pair_to_k(i, j, part.groups)];
            if (vk < 0) continue;
            if (vk == w || g.has_edge(w, vk)) send_lists[w].push_back({vk, e});
        }
    }
    auto routed = route_edges(g, cfg, send_lists, is_label, pre.root);
    phases.push_back(std::move(routed.transcript));

    // assemble the root's view of the graph
    std::set<Edge> at_r;
    for (int w : g.neighbors(pre.root)) {
        at_r.insert(make_edge(pre.root, w));
        for (int b : g.neighbors(w)) at_r.insert(make_edge(w, b));
    }
    for (const Edge& e : routed.at_root) at_r.insert(e);

    Graph local = graph_from_edge_set(g.n(), at_r);
    d.accept = induced_path_exists(local, 5) == Verdict::kNo;
    d.local_count = at_r.size();
    d.transcript = sim::combine(std::move(phases));
    return d;
}

} // namespace

P5Decision decide_diameter2(const Graph& g, const P5Config& cfg) {
    return decide_diameter2_with(g, cfg, run_prelude(g, cfg));
}

P5Decision decide_p5_free(const Graph& g, const P5Config& cfg) {
    P5Decision d;
    if (g.n() < 5) {
        d.accept = true;
        d.branch = "trivial";
        return d;
    }
    std::vector<Transcript> phases;
    Prelude pre = run_prelude(g, cfg);
    d.diameter = pre.diam;
    if (pre.disconnected) {
        for (auto& t : pre.phases) phases.push_back(std::move(t));
        d.accept = false;
        d.branch = "disconnected";
        d.transcript = sim::combine(std::move(phases));
        return d;
    }
    if (pre.diam >= 4) {
        for (auto& t : pre.phases) phases.push_back(std::move(t));
        d.accept = false;
        d.branch = "diam>=4";
        d.transcript = sim::combine(std::move(phases));
        return d;
    }
    if (pre.diam <= 1) {
        for (auto& t : pre.phases) phases.push_back(std::move(t));
        d.accept = true;
        d.branch = "clique";
        d.transcript = sim::combine(std::move(phases));
        return d;
    }

    if (sparse_threshold(g, cfg)) {
        for (auto& t : pre.phases) phases.push_back(std::move(t));
        Transcript t;
        auto edges = sparse_collect(g, pre.tree, cfg, t);
        phases.push_back(std::move(t));
        Graph local = graph_from_edge_set(g.n(), edges);
        d.accept = induced_path_exists(local, 5) == Verdict::kNo;
        d.branch = "sparse";
        d.local_count = edges.size();
        d.transcript = sim::combine(std::move(phases));
        return d;
    }

    if (pre.diam == 2) {
        auto sub = decide_diameter2_with(g, cfg, std::move(pre));
        sub.branch = "diam2";
        return sub;
    }

    // diameter 3 pipeline
    auto st = p_collect(g, cfg);
    phases.push_back(std::move(st.transcript));
    d.branch = "diam3";
    if (st.aborted) {
        d.aborted = true;
        d.transcript = sim::combine(std::move(phases));
        return d;
    }
    if (st.rejected) {
        d.accept = false;
        d.transcript = sim::combine(std::move(phases));
        return d;
    }
    auto det = detect_special_paths(g, st);
    if (det.found) {
        d.accept = false;
        d.transcript = sim::combine(std::move(phases));
        return d;
    }
    auto cnt = count_dangerous(g, st, cfg);
    phases.push_back(std::move(cnt.transcript));
    d.t = cnt.t;
    Graph reduced = graph_from_edge_set(g.n(), st.edges_at_r);
    d.local_count = count_induced_copies_mask(reduced, canon5_of(path_graph(5)));
    d.accept = d.local_count == d.t && !cnt.non_catalog_dangerous;
    d.transcript = sim::combine(std::move(phases));
    return d;
}

bool decide_p5_free_majority(const Graph& g, const P5Config& cfg, int runs) {
    int yes = 0;
    for (int i = 0; i < runs; ++i) {
        P5Config c = cfg;
        c.seed = mix64(cfg.seed, 0x5eed00 + static_cast<uint64_t>(i));
        if (decide_p5_free(g, c).accept) ++yes;
    }
    return 2 * yes > runs;
}

nlohmann::json decision_json(const P5Decision& d) {
    return {{"decision", d.accept ? "accept" : "reject"},
            {"branch", d.branch},
            {"aborted", d.aborted},
            {"rounds", d.transcript.rounds_used},
            {"t", d.t},
            {"local_count", d.local_count},
            {"diameter", d.diameter}};
}

} // namespace pathlab::p5

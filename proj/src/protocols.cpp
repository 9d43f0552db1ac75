#include "pathlab/protocols.hpp"

#include <algorithm>
#include <queue>
#include <set>

#include "pathlab/oracles.hpp"

namespace pathlab::sim {

RootedTree bfs_tree(const Graph& g, int root) {
    auto dist = bfs_distances(g, root);
    RootedTree t;
    t.root = root;
    t.parent.assign(g.n(), -1);
    t.depth_of = dist;
    for (int u = 0; u < g.n(); ++u) {
        if (u == root) continue;
        if (dist[u] < 0) throw std::invalid_argument("bfs_tree: graph is disconnected");
        for (int v : g.neighbors(u))
            if (dist[v] == dist[u] - 1) {
                t.parent[u] = v;
                break; // neighbors sorted, so this is the min-id parent
            }
        t.height = std::max(t.height, dist[u]);
    }
    return t;
}

namespace {

class PipelineProgram : public NodeProgram {
public:
    PipelineProgram(std::vector<uint64_t> own_items, int payload_bits, int id_width,
                    std::set<std::pair<int, uint64_t>>* sink)
        : own_(std::move(own_items)), payload_bits_(payload_bits), id_width_(id_width),
          known_(*sink) {}

    void init(const LocalView& view) override {
        id_ = view.id;
        for (uint64_t p : own_) learn(id_, p);
    }

    void step(int64_t, const Inbox& inbox, Outbox& out) override {
        inbox.for_each([&](int, const Message& m) {
            learn(static_cast<int>(m.at(0)), m.at(1));
        });
        if (!queue_.empty()) {
            auto [origin, payload] = queue_.front();
            queue_.pop();
            Message m;
            m.add(static_cast<uint64_t>(origin), id_width_).add(payload, payload_bits_);
            out.broadcast(std::move(m));
        }
    }

    bool done() const override { return queue_.empty(); }

private:
    void learn(int origin, uint64_t payload) {
        if (known_.insert({origin, payload}).second) queue_.push({origin, payload});
    }

    int id_ = 0;
    std::vector<uint64_t> own_;
    int payload_bits_, id_width_;
    std::set<std::pair<int, uint64_t>>& known_;
    std::queue<std::pair<int, uint64_t>> queue_;
};

} // namespace

PipelineResult pipeline_broadcast(const Graph& g, const std::vector<std::vector<uint64_t>>& items,
                                  int payload_bits, const NetworkConfig& cfg) {
    if (static_cast<int>(items.size()) != g.n())
        throw std::invalid_argument("pipeline_broadcast: one item list per node required");
    int id_width = id_bits(g.n());
    if (id_width + payload_bits > cfg.resolved_bandwidth(g.n()))
        throw std::invalid_argument("pipeline_broadcast: token exceeds bandwidth");
    size_t total = 0;
    for (auto& v : items) total += v.size();

    std::vector<std::set<std::pair<int, uint64_t>>> sinks(g.n());
    auto factory = [&](int u) {
        return std::make_unique<PipelineProgram>(items[u], payload_bits, id_width, &sinks[u]);
    };
    PipelineResult r;
    r.transcript = run(factory, g, cfg);
    r.known.resize(g.n());
    for (int u = 0; u < g.n(); ++u) {
        r.known[u].assign(sinks[u].begin(), sinks[u].end());
        if (r.known[u].size() != total) r.transcript.timed_out = true;
    }
    return r;
}

namespace {

class ConvergecastProgram : public NodeProgram {
public:
    ConvergecastProgram(uint64_t own, int pending_children, int parent, int value_bits)
        : sum_(own), pending_(pending_children), parent_(parent), value_bits_(value_bits) {}

    void init(const LocalView&) override {}

    void step(int64_t, const Inbox& inbox, Outbox& out) override {
        inbox.for_each([&](int, const Message& m) {
            sum_ += m.at(0);
            --pending_;
        });
        if (pending_ == 0 && !sent_) {
            sent_ = true;
            if (parent_ >= 0) {
                Message m;
                m.add(sum_, value_bits_);
                out.send(parent_, std::move(m));
            }
        }
    }

    bool done() const override { return sent_; }

    nlohmann::json output() const override {
        return parent_ < 0 ? nlohmann::json(sum_) : nlohmann::json(nullptr);
    }

    uint64_t sum() const { return sum_; }

private:
    uint64_t sum_;
    int pending_;
    int parent_;
    int value_bits_;
    bool sent_ = false;
};

} // namespace

ConvergecastResult convergecast_sum(const Graph& g, const RootedTree& tree,
                                    const std::vector<uint64_t>& values, int value_bits,
                                    const NetworkConfig& cfg) {
    if (static_cast<int>(values.size()) != g.n())
        throw std::invalid_argument("convergecast_sum: one value per node required");
    uint64_t total = 0;
    for (uint64_t v : values) total += v;
    if (value_bits > 64 || (value_bits < 64 && (total >> value_bits) != 0))
        throw std::invalid_argument("convergecast_sum: sum exceeds declared bit budget");
    if (value_bits > cfg.resolved_bandwidth(g.n()))
        throw std::invalid_argument("convergecast_sum: value exceeds bandwidth");
    if (cfg.mode != Mode::kUnicast)
        throw std::invalid_argument("convergecast_sum: requires unicast mode");

    std::vector<int> child_count(g.n(), 0);
    for (int u = 0; u < g.n(); ++u)
        if (tree.parent[u] >= 0) child_count[tree.parent[u]]++;

    ConvergecastResult r;
    auto factory = [&](int u) {
        return std::make_unique<ConvergecastProgram>(values[u], child_count[u], tree.parent[u],
                                                     value_bits);
    };
    r.transcript = run(factory, g, cfg);
    r.root_sum = r.transcript.node_outputs[tree.root].get<uint64_t>();
    return r;
}

namespace {

class NeighborListProgram : public NodeProgram {
public:
    explicit NeighborListProgram(std::vector<std::vector<int>>* sink) : lists_(*sink) {}

    void init(const LocalView& view) override {
        neighbors_ = view.neighbors;
        id_width_ = id_bits(view.n);
        lists_.resize(neighbors_.size());
    }

    void step(int64_t, const Inbox& inbox, Outbox& out) override {
        inbox.for_each([&](int from, const Message& m) {
            size_t idx = static_cast<size_t>(
                std::lower_bound(neighbors_.begin(), neighbors_.end(), from) - neighbors_.begin());
            lists_[idx].push_back(static_cast<int>(m.at(0)));
        });
        if (next_ < neighbors_.size()) {
            Message m;
            m.add(static_cast<uint64_t>(neighbors_[next_]), id_width_);
            ++next_;
            out.broadcast(std::move(m));
        }
    }

    bool done() const override { return next_ >= neighbors_.size(); }

private:
    std::vector<std::vector<int>>& lists_;
    std::vector<int> neighbors_;
    size_t next_ = 0;
    int id_width_ = 0;
};

} // namespace

NeighborExchangeResult exchange_neighbor_lists(const Graph& g, const NetworkConfig& cfg) {
    NeighborExchangeResult r;
    r.lists.resize(g.n());
    auto factory = [&](int u) { return std::make_unique<NeighborListProgram>(&r.lists[u]); };
    r.transcript = run(factory, g, cfg);
    for (auto& node_lists : r.lists)
        for (auto& l : node_lists) std::sort(l.begin(), l.end());
    return r;
}

namespace {

constexpr int kInfDist = INT32_MAX / 2;

class BfsWavesProgram : public NodeProgram {
public:
    explicit BfsWavesProgram(std::vector<int>* sink) : dist_(*sink) {}

    void init(const LocalView& view) override {
        id_ = view.id;
        n_ = view.n;
        id_width_ = id_bits(n_);
        dist_.assign(n_, kInfDist);
        sent_.assign(n_, kInfDist);
        dist_[id_] = 0;
        pending_.push({0, id_});
        unsent_ = 1;
    }

    void step(int64_t, const Inbox& inbox, Outbox& out) override {
        inbox.for_each([&](int, const Message& m) {
            int src = static_cast<int>(m.at(0));
            int d = static_cast<int>(m.at(1)) + 1;
            if (d < dist_[src]) {
                if (sent_[src] <= dist_[src]) ++unsent_; // was clean, now owes a send
                dist_[src] = d;
                pending_.push({d, src});
            }
        });
        while (!pending_.empty()) {
            auto [d, src] = pending_.top();
            if (d > dist_[src] || sent_[src] <= dist_[src]) {
                pending_.pop(); // stale or already sent at this value
                continue;
            }
            pending_.pop();
            sent_[src] = dist_[src];
            --unsent_;
            Message m;
            m.add(static_cast<uint64_t>(src), id_width_)
                .add(static_cast<uint64_t>(dist_[src]), id_width_);
            out.broadcast(std::move(m));
            break;
        }
    }

    bool done() const override { return unsent_ == 0; }

    nlohmann::json output() const override {
        int ecc = 0;
        for (int d : dist_) {
            if (d >= kInfDist) return nlohmann::json{{"ecc", -1}};
            ecc = std::max(ecc, d);
        }
        return nlohmann::json{{"ecc", ecc}};
    }

private:
    std::vector<int>& dist_;
    int id_ = 0, n_ = 0, id_width_ = 0;
    int unsent_ = 0;
    std::vector<int> sent_;
    std::priority_queue<std::pair<int, int>, std::vector<std::pair<int, int>>, std::greater<>>
        pending_;
};

} // namespace

BfsWavesResult all_bfs_waves(const Graph& g, const NetworkConfig& cfg) {
    BfsWavesResult r;
    r.dist.resize(g.n());
    auto factory = [&](int u) { return std::make_unique<BfsWavesProgram>(&r.dist[u]); };
    r.transcript = run(factory, g, cfg);
    r.ecc.resize(g.n());
    for (int u = 0; u < g.n(); ++u) {
        int ecc = 0;
        for (int& d : r.dist[u]) {
            if (d >= kInfDist) {
                d = -1;
                r.connected = false;
                ecc = -1;
            } else if (ecc >= 0) {
                ecc = std::max(ecc, d);
            }
        }
        r.ecc[u] = ecc;
    }
    return r;
}

namespace {

class MaxDegreeFlood : public NodeProgram {
public:
    explicit MaxDegreeFlood(int rounds) : rounds_(rounds) {}
    void init(const LocalView& v) override {
        width_ = id_bits(v.n);
        best_deg_ = static_cast<int>(v.neighbors.size());
        best_id_ = v.id;
    }
    void step(int64_t round, const Inbox& inbox, Outbox& out) override {
        inbox.for_each([&](int, const Message& m) {
            int deg = static_cast<int>(m.at(0));
            int id = static_cast<int>(m.at(1));
            if (deg > best_deg_ || (deg == best_deg_ && id < best_id_)) {
                best_deg_ = deg;
                best_id_ = id;
            }
        });
        if (round <= rounds_) {
            Message m;
            m.add(static_cast<uint64_t>(best_deg_), width_)
                .add(static_cast<uint64_t>(best_id_), width_);
            out.broadcast(std::move(m));
        }
        finished_ = round >= rounds_ + 1;
    }
    bool done() const override { return finished_; }
    nlohmann::json output() const override { return {{"r", best_id_}, {"deg", best_deg_}}; }

private:
    int rounds_, width_ = 0;
    int best_deg_ = -1, best_id_ = -1;
    bool finished_ = false;
};

} // namespace

ElectionResult elect_max_degree(const Graph& g, int rounds, const NetworkConfig& cfg) {
    ElectionResult r;
    r.transcript = run([&](int) { return std::make_unique<MaxDegreeFlood>(rounds); }, g, cfg);
    for (auto& out : r.transcript.node_outputs) {
        int id = out["r"].get<int>();
        if (r.root < 0) {
            r.root = id;
            r.root_degree = out["deg"].get<int>();
        } else if (id != r.root) {
            r.unanimous = false;
        }
    }
    return r;
}

DiameterResult distributed_diameter(const Graph& g, const NetworkConfig& cfg) {
    auto waves = all_bfs_waves(g, cfg);
    DiameterResult r;
    r.transcript = std::move(waves.transcript);
    if (!waves.connected || r.transcript.timed_out) {
        r.diameter = std::nullopt;
        return r;
    }
    int d = 0;
    for (int e : waves.ecc) d = std::max(d, e);
    r.diameter = d;
    return r;
}

} // namespace pathlab::sim

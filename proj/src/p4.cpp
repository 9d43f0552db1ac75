#include "pathlab/p4.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <mutex>
#include <unordered_map>

namespace pathlab::p4 {

using sim::Inbox;
using sim::LocalView;
using sim::Message;
using sim::NodeProgram;
using sim::Outbox;
using sim::Transcript;

int P4Config::fanout(int n) const {
    if (fanout_threshold > 0) return fanout_threshold;
    if (n < 16) return std::max(4, n);
    double v = 4.0 * std::log(n) / std::log(std::log(n));
    return std::max(4, static_cast<int>(std::ceil(v)) + 4);
}

namespace {

constexpr uint64_t kFingerTag = 0xf117ULL << 32;

// largest prime below 2^bits, memoized
uint64_t field_prime(int bits) {
    static std::mutex mu;
    static std::unordered_map<int, uint64_t> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(bits);
    if (it != cache.end()) return it->second;
    auto is_prime = [](uint64_t x) {
        if (x < 2) return false;
        for (uint64_t d = 2; d * d <= x; ++d)
            if (x % d == 0) return false;
        return true;
    };
    for (uint64_t p = (1ULL << bits) - 1;; --p)
        if (is_prime(p)) {
            cache[bits] = p;
            return p;
        }
}

uint64_t rvec(uint64_t shared_seed, int node, uint64_t prime) {
    return mix64(shared_seed, kFingerTag ^ static_cast<uint64_t>(node)) % prime;
}

// min-id wave for a constant number of rounds; final (id, dist) pair is the
// smallest id heard with its BFS distance
class MinWaveProgram : public NodeProgram {
public:
    explicit MinWaveProgram(int rounds) : rounds_(rounds) {}
    void init(const LocalView& v) override {
        best_id_ = v.id;
        width_ = id_bits(v.n);
    }
    void step(int64_t round, const Inbox& inbox, Outbox& out) override {
        inbox.for_each([&](int, const Message& m) {
            int i = static_cast<int>(m.at(0));
            if (i < best_id_) {
                best_id_ = i;
                best_dist_ = static_cast<int>(m.at(1)) + 1;
            }
        });
        if (round <= rounds_) {
            Message m;
            m.add(static_cast<uint64_t>(best_id_), width_)
                .add(static_cast<uint64_t>(best_dist_), width_);
            out.broadcast(std::move(m));
        }
        finished_ = round >= rounds_ + 1;
    }
    bool done() const override { return finished_; }
    nlohmann::json output() const override {
        return {{"reject", best_dist_ > 2}, {"min_id", best_id_}};
    }

private:
    int rounds_, width_ = 0;
    int best_id_ = 0, best_dist_ = 0;
    bool finished_ = false;
};

// (degree, -id) maximum flood
class MaxDegreeProgram : public NodeProgram {
public:
    explicit MaxDegreeProgram(int rounds) : rounds_(rounds) {}
    void init(const LocalView& v) override {
        n_ = v.n;
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
    nlohmann::json output() const override {
        return {{"r", best_id_}, {"deg", best_deg_}, {"reject", 2 * best_deg_ < n_}};
    }

private:
    int rounds_, width_ = 0, n_ = 0;
    int best_deg_ = -1, best_id_ = -1;
    bool finished_ = false;
};

// round 1: depth-1 nodes announce; round 2: depth-2 nodes pick a uniformly
// random announced neighbor as parent; round 3: depth-1 nodes count children
class TreeBuildProgram : public NodeProgram {
public:
    TreeBuildProgram(int root, int fanout_threshold)
        : root_(root), fanout_threshold_(fanout_threshold) {}

    void init(const LocalView& v) override {
        id_ = v.id;
        width_ = id_bits(v.n);
        rng_ = std::make_unique<Rng>(v.private_seed);
        depth_ = id_ == root_ ? 0
                 : std::binary_search(v.neighbors.begin(), v.neighbors.end(), root_) ? 1
                                                                                     : 2;
        if (depth_ == 1) parent_ = root_;
    }

    void step(int64_t round, const Inbox& inbox, Outbox& out) override {
        if (round == 1) {
            if (depth_ == 1) {
                Message m;
                m.add(1, 2);
                out.broadcast(std::move(m));
            }
        } else if (round == 2) {
            if (depth_ == 2) {
                std::vector<int> candidates;
                inbox.for_each([&](int from, const Message& m) {
                    if (m.at(0) == 1) candidates.push_back(from);
                });
                std::sort(candidates.begin(), candidates.end());
                if (candidates.empty()) {
                    rejected_ = true; // no depth-1 neighbor: distance to root > 2
                } else {
                    parent_ = candidates[rng_->below(candidates.size())];
                    Message m;
                    m.add(2, 2).add(static_cast<uint64_t>(parent_), width_);
                    out.broadcast(std::move(m));
                }
            }
        } else if (round == 3) {
            if (depth_ == 1) {
                inbox.for_each([&](int, const Message& m) {
                    if (m.at(0) == 2 && static_cast<int>(m.at(1)) == id_) ++children_;
                });
                if (children_ > fanout_threshold_) rejected_ = true;
            }
            finished_ = true;
        }
    }

    bool done() const override { return finished_; }
    nlohmann::json output() const override {
        return {{"depth", depth_}, {"parent", parent_}, {"children", children_},
                {"reject", rejected_}};
    }

private:
    int root_, fanout_threshold_;
    int id_ = 0, width_ = 0, depth_ = 0, parent_ = -1, children_ = 0;
    bool rejected_ = false, finished_ = false;
    std::unique_ptr<Rng> rng_;
};

struct Sketch {
    int degree;
    uint64_t fp;
};

// referee-side twin elimination over (weight, fingerprint) classes
struct Referee {
    uint64_t prime;
    bool collision = false;

    bool eliminate(std::vector<std::pair<uint64_t, Sketch>> sketches, uint64_t shared_seed) {
        struct Cls {
            uint64_t w, fp;
            bool alive = true;
            int degree; // vertex degree while the class is a singleton, else -1
        };
        std::vector<Cls> cls;
        cls.reserve(sketches.size());
        for (auto& [node, sk] : sketches)
            cls.push_back({rvec(shared_seed, static_cast<int>(node), prime), sk.fp % prime, true,
                           sk.degree});

        // key -> class indices; false twins share fp, true twins share fp+w.
        // Class weights and fingerprints never change after creation, so new
        // duplicate keys can only involve freshly merged classes; a worklist
        // of keys is complete.
        std::unordered_map<uint64_t, std::vector<int>> by_fp, by_closed;
        auto closed_key = [&](const Cls& c) { return (c.fp + c.w) % prime; };
        std::vector<std::pair<bool, uint64_t>> work; // (closed?, key)
        auto insert = [&](int i) {
            by_fp[cls[i].fp].push_back(i);
            by_closed[closed_key(cls[i])].push_back(i);
            work.push_back({false, cls[i].fp});
            work.push_back({true, closed_key(cls[i])});
        };
        for (int i = 0; i < static_cast<int>(cls.size()); ++i) insert(i);

        int remaining = static_cast<int>(cls.size());
        while (remaining > 1 && !work.empty()) {
            auto [closed, key] = work.back();
            work.pop_back();
            auto& index = closed ? by_closed : by_fp;
            auto it = index.find(key);
            if (it == index.end()) continue;
            auto& vec = it->second;
            std::vector<int> alive;
            for (int i : vec)
                if (cls[i].alive) alive.push_back(i);
            vec = alive;
            if (alive.size() < 2) continue;
            int i = alive[0], j = alive[1];
            if (cls[i].degree >= 0 && cls[j].degree >= 0 && cls[i].degree != cls[j].degree) {
                collision = true; // distinct verified neighborhoods, equal fingerprints
                return false;
            }
            Cls merged;
            merged.w = (cls[i].w + cls[j].w) % prime;
            merged.fp = closed ? (cls[i].fp + prime - cls[j].w) % prime : cls[i].fp;
            merged.degree = -1;
            merged.alive = true;
            cls[i].alive = cls[j].alive = false;
            cls.push_back(merged);
            insert(static_cast<int>(cls.size()) - 1);
            work.push_back({closed, key}); // the key may still hold more twins
            --remaining;
        }
        return remaining == 1;
    }
};

// depth-2 nodes send their sketch tagged with the parent; depth-1 nodes
// forward sketches addressed to them, one per round; the root collects and
// decides
class SketchProgram : public NodeProgram {
public:
    SketchProgram(const Depth2Tree& tree, uint64_t prime, int fp_bits)
        : tree_(tree), prime_(prime), fp_bits_(fp_bits) {}

    void init(const LocalView& v) override {
        id_ = v.id;
        n_ = v.n;
        width_ = id_bits(v.n);
        shared_seed_ = v.shared_seed;
        uint64_t fp = 0;
        for (int w : v.neighbors) fp = (fp + rvec(shared_seed_, w, prime_)) % prime_;
        own_ = {static_cast<int>(v.neighbors.size()), fp};
        if (tree_.depth[id_] == 0) collected_.emplace_back(id_, own_);
        if (tree_.depth[id_] == 1) queue_.push({id_, own_});
    }

    void step(int64_t round, const Inbox& inbox, Outbox& out) override {
        inbox.for_each([&](int from, const Message& m) {
            int origin = static_cast<int>(m.at(0));
            int parent = static_cast<int>(m.at(1));
            Sketch sk{static_cast<int>(m.at(2)), m.at(3)};
            if (tree_.depth[id_] == 0) {
                collected_.emplace_back(origin, sk);
            } else if (tree_.depth[id_] == 1 && parent == id_ && tree_.depth[from] == 2) {
                queue_.push({origin, sk});
            }
        });
        if (tree_.depth[id_] == 2 && round == 1) {
            emit(out, id_, tree_.parent[id_], own_);
            sent_own_ = true;
        } else if (tree_.depth[id_] == 1 && !queue_.empty()) {
            auto [origin, sk] = queue_.front();
            queue_.pop();
            emit(out, origin, 0, sk);
        }
    }

    bool done() const override {
        if (tree_.depth[id_] == 2) return sent_own_;
        if (tree_.depth[id_] == 1) return queue_.empty();
        return true; // root wakes on arrivals
    }

    nlohmann::json output() const override {
        if (tree_.depth[id_] != 0) return nullptr;
        if (static_cast<int>(collected_.size()) != n_)
            return {{"accept", false}, {"collision", false}, {"incomplete", true}};
        Referee ref{prime_};
        std::vector<std::pair<uint64_t, Sketch>> sketches;
        for (auto& [node, sk] : collected_) sketches.emplace_back(node, sk);
        bool accept = ref.eliminate(std::move(sketches), shared_seed_);
        return {{"accept", accept}, {"collision", ref.collision}, {"incomplete", false}};
    }

private:
    void emit(Outbox& out, int origin, int parent, const Sketch& sk) {
        Message m;
        m.add(static_cast<uint64_t>(origin), width_)
            .add(static_cast<uint64_t>(parent), width_)
            .add(static_cast<uint64_t>(sk.degree), width_)
            .add(sk.fp, fp_bits_);
        out.broadcast(std::move(m));
    }

    const Depth2Tree& tree_;
    uint64_t prime_;
    int fp_bits_;
    int id_ = 0, n_ = 0, width_ = 0;
    uint64_t shared_seed_ = 0;
    Sketch own_{0, 0};
    bool sent_own_ = false;
    std::queue<std::pair<int, Sketch>> queue_;
    std::vector<std::pair<int, Sketch>> collected_;
};

} // namespace

TreeResult build_depth2_tree(const Graph& g, const P4Config& cfg) {
    TreeResult res;
    auto net = cfg.net(g.n());
    std::vector<Transcript> phases;

    // constant-round diameter screen
    auto wave = sim::run([&](int) { return std::make_unique<MinWaveProgram>(4); }, g, net);
    for (auto& out : wave.node_outputs)
        if (out["reject"].get<bool>()) {
            res.rejected = true;
            res.reason = "diameter screen";
        }
    phases.push_back(std::move(wave));

    int root = -1;
    if (!res.rejected) {
        auto elect = sim::run([&](int) { return std::make_unique<MaxDegreeProgram>(4); }, g, net);
        bool unanimous = true;
        for (auto& out : elect.node_outputs) {
            if (out["reject"].get<bool>()) {
                res.rejected = true;
                res.reason = "max degree below n/2";
            }
            if (root < 0) root = out["r"].get<int>();
            if (out["r"].get<int>() != root) unanimous = false;
        }
        if (!res.rejected && !unanimous) {
            res.rejected = true; // disagreement implies diameter > 4
            res.reason = "no agreement on root";
        }
        phases.push_back(std::move(elect));
    }

    if (!res.rejected) {
        auto build = sim::run(
            [&](int) { return std::make_unique<TreeBuildProgram>(root, cfg.fanout(g.n())); }, g,
            net);
        res.tree.root = root;
        res.tree.parent.assign(g.n(), -1);
        res.tree.depth.assign(g.n(), 0);
        for (int u = 0; u < g.n(); ++u) {
            auto& out = build.node_outputs[u];
            if (out["reject"].get<bool>()) {
                res.rejected = true;
                res.reason = "tree build";
            }
            res.tree.parent[u] = out["parent"].get<int>();
            res.tree.depth[u] = out["depth"].get<int>();
            res.tree.max_children_depth1 =
                std::max(res.tree.max_children_depth1, out["children"].get<int>());
        }
        phases.push_back(std::move(build));
    }

    res.transcript = sim::combine(std::move(phases));
    return res;
}

RefereeResult sketch_and_refer(const Graph& g, const Depth2Tree& tree, const P4Config& cfg) {
    RefereeResult res;
    int fp_bits = std::max(3 * id_bits(g.n()), cfg.min_field_bits);
    uint64_t prime = field_prime(fp_bits);
    res.transcript = sim::run(
        [&](int) { return std::make_unique<SketchProgram>(tree, prime, fp_bits); }, g,
        cfg.net(g.n()));
    auto& verdict = res.transcript.node_outputs[tree.root];
    res.accept = verdict["accept"].get<bool>();
    res.collision = verdict["collision"].get<bool>();
    return res;
}

P4Decision decide_p4_free(const Graph& g, const P4Config& cfg) {
    P4Decision d;
    if (g.n() < 4) {
        d.accept = true;
        d.branch = "trivial";
        return d;
    }
    P4Config attempt = cfg;
    std::vector<Transcript> phases;
    for (int retry = 0; retry < 3; ++retry) {
        auto tree = build_depth2_tree(g, attempt);
        phases.push_back(std::move(tree.transcript));
        if (tree.rejected) {
            d.accept = false;
            d.branch = "tree-reject:" + tree.reason;
            d.transcript = sim::combine(std::move(phases));
            return d;
        }
        d.tree = tree.tree;
        d.tree_built = true;
        auto ref = sketch_and_refer(g, d.tree, attempt);
        phases.push_back(std::move(ref.transcript));
        if (!ref.collision) {
            d.accept = ref.accept;
            d.branch = "referee";
            d.transcript = sim::combine(std::move(phases));
            return d;
        }
        attempt.seed = mix64(attempt.seed, 0xc0111de ^ static_cast<uint64_t>(retry));
    }
    d.accept = false;
    d.branch = "collision-retries-exhausted";
    d.transcript = sim::combine(std::move(phases));
    return d;
}

bool decide_p4_free_majority(const Graph& g, const P4Config& cfg, int runs) {
    int yes = 0;
    for (int i = 0; i < runs; ++i) {
        P4Config c = cfg;
        c.seed = mix64(cfg.seed, 0xabcd00 + static_cast<uint64_t>(i));
        if (decide_p4_free(g, c).accept) ++yes;
    }
    return 2 * yes > runs;
}

} // namespace pathlab::p4

#include "pathlab/sim.hpp"

#include <algorithm>

namespace pathlab::sim {

namespace {

uint64_t fnv1a(uint64_t h, uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xff;
        h *= 0x100000001b3ULL;
    }
    return h;
}
constexpr uint64_t kFnvInit = 0xcbf29ce484222325ULL;

} // namespace

nlohmann::json Transcript::to_json() const {
    nlohmann::json j;
    j["rounds"] = rounds_used;
    j["timed_out"] = timed_out;
    j["aborted"] = aborted;
    j["messages"] = total_messages;
    j["max_bits"] = max_message_bits;
    j["content_hash"] = content_hash;
    j["outputs"] = node_outputs;
    nlohmann::json v = nlohmann::json::array();
    for (const auto& viol : violations)
        v.push_back({{"round", viol.round},
                     {"from", viol.from},
                     {"to", viol.to},
                     {"bits", viol.bits},
                     {"kind", viol.kind}});
    j["violations"] = v;
    if (!message_log.empty()) {
        nlohmann::json log = nlohmann::json::array();
        for (const auto& m : message_log) {
            nlohmann::json fields = nlohmann::json::array();
            for (const auto& f : m.fields) fields.push_back({{"value", f.value}, {"bits", f.bits}});
            log.push_back({{"round", m.round}, {"from", m.from}, {"to", m.to}, {"fields", fields}});
        }
        j["message_log"] = log;
    }
    return j;
}

class Engine {
public:
    Engine(const ProgramFactory& factory, const Graph& g, const NetworkConfig& cfg,
           const DropSpec* drop)
        : g_(g), cfg_(cfg), drop_(drop) {
        cfg.validate(g.n());
        bandwidth_ = cfg.resolved_bandwidth(g.n());
        int n = g.n();
        programs_.reserve(n);
        uint64_t shared = mix64(cfg.seed, 0x5ea5edULL);
        for (int u = 0; u < n; ++u) {
            programs_.push_back(factory(u));
            LocalView view;
            view.id = u;
            view.n = n;
            view.neighbors = g.neighbors(u);
            view.shared_seed = shared;
            view.private_seed = mix64(cfg.seed, 0x9000000ULL + static_cast<uint64_t>(u));
            programs_.back()->init(view);
        }
        bcast_now_.assign(n, nullptr);
        bcast_next_.assign(n, nullptr);
        inbox_unicast_now_.assign(n, {});
        inbox_unicast_next_.assign(n, {});
    }

    Transcript run() {
        Transcript t;
        t.content_hash = kFnvInit;
        int n = g_.n();
        for (int64_t round = 1;; ++round) {
            if (round > cfg_.round_limit) {
                t.timed_out = true;
                break;
            }
            pool_next_.clear();
            std::fill(bcast_next_.begin(), bcast_next_.end(), nullptr);
            for (auto& v : inbox_unicast_next_) v.clear();

            RoundStats stats;
            uint64_t round_hash = kFnvInit;
            bool all_done = true;

            auto account = [&](int from, int to, const Message* stored) {
                int bits = stored->bit_size();
                stats.messages++;
                stats.max_bits = std::max<int64_t>(stats.max_bits, bits);
                stats.total_bits += bits;
                t.content_hash = hash_message(t.content_hash, from, to, *stored);
                if (cfg_.log_messages) t.message_log.push_back({round, from, to, stored->fields});
            };

            for (int u = 0; u < n; ++u) {
                Inbox inbox;
                inbox.bcast_table_ = &bcast_now_;
                inbox.neighbors_ = &g_.neighbors(u);
                inbox.unicast_ = &inbox_unicast_now_[u];
                // a quiescent node wakes up when messages arrive
                if (programs_[u]->done() && inbox.empty()) continue;
                Outbox out;
                out.mode_ = cfg_.mode;
                programs_[u]->step(round, inbox, out);
                if (!programs_[u]->done()) all_done = false;

                if (out.bcast_) {
                    int bits = out.bcast_->bit_size();
                    if (bits > bandwidth_) {
                        t.violations.push_back({round, u, -1, bits, "bandwidth"});
                        t.aborted = true;
                    }
                    pool_next_.push_back(std::move(*out.bcast_));
                    const Message* stored = &pool_next_.back();
                    round_hash = hash_message(round_hash, u, -1, *stored);
                    bool dropped_here = drop_ && drop_->round == round && drop_->from == u;
                    if (dropped_here) {
                        // suppress one directed copy; the rest arrive as
                        // explicit deliveries
                        for (int v : g_.neighbors(u)) {
                            if (v == drop_->to) continue;
                            inbox_unicast_next_[v].push_back({u, stored});
                            account(u, v, stored);
                        }
                    } else {
                        bcast_next_[u] = stored;
                        for (int v : g_.neighbors(u)) account(u, v, stored);
                    }
                }
                for (auto& [to, m] : out.unicast_) {
                    if (!g_.has_edge(u, to)) {
                        t.violations.push_back({round, u, to, m.bit_size(), "not a neighbor"});
                        t.aborted = true;
                        continue;
                    }
                    int bits = m.bit_size();
                    if (bits > bandwidth_) {
                        t.violations.push_back({round, u, to, bits, "bandwidth"});
                        t.aborted = true;
                    }
                    pool_next_.push_back(std::move(m));
                    const Message* stored = &pool_next_.back();
                    round_hash = hash_message(round_hash, u, to, *stored);
                    if (!(drop_ && drop_->round == round && drop_->from == u && drop_->to == to)) {
                        inbox_unicast_next_[to].push_back({u, stored});
                        account(u, to, stored);
                    }
                }
            }

            t.per_round.push_back(stats);
            t.round_hashes.push_back(round_hash);
            if (stats.messages > 0) {
                t.rounds_used = round;
                t.total_messages += stats.messages;
                t.max_message_bits = std::max(t.max_message_bits, stats.max_bits);
            }
            if (t.aborted) break;
            if (all_done && stats.messages == 0) break;

            std::swap(bcast_now_, bcast_next_);
            std::swap(inbox_unicast_now_, inbox_unicast_next_);
            std::swap(pool_now_, pool_next_);
        }

        t.node_outputs.reserve(n);
        for (int u = 0; u < n; ++u) t.node_outputs.push_back(programs_[u]->output());
        return t;
    }

    NodeProgram& program(int u) { return *programs_[u]; }

private:
    static uint64_t hash_message(uint64_t h, int from, int to, const Message& m) {
        h = fnv1a(h, static_cast<uint64_t>(from));
        h = fnv1a(h, static_cast<uint64_t>(to) + 0x10000);
        for (const auto& f : m.fields) {
            h = fnv1a(h, f.value);
            h = fnv1a(h, static_cast<uint64_t>(f.bits));
        }
        return h;
    }

    const Graph& g_;
    NetworkConfig cfg_;
    const DropSpec* drop_;
    int bandwidth_;
    std::vector<std::unique_ptr<NodeProgram>> programs_;
    std::deque<Message> pool_now_, pool_next_;
    std::vector<const Message*> bcast_now_, bcast_next_;
    std::vector<std::vector<Delivery>> inbox_unicast_now_, inbox_unicast_next_;
};

Transcript run(const ProgramFactory& factory, const Graph& g, const NetworkConfig& cfg,
               const DropSpec* drop) {
    Engine engine(factory, g, cfg, drop);
    return engine.run();
}

Transcript combine(std::vector<Transcript> phases) {
    Transcript total;
    total.content_hash = kFnvInit;
    for (auto& p : phases) {
        total.rounds_used += p.rounds_used;
        total.timed_out = total.timed_out || p.timed_out;
        total.aborted = total.aborted || p.aborted;
        total.total_messages += p.total_messages;
        total.max_message_bits = std::max(total.max_message_bits, p.max_message_bits);
        total.content_hash = fnv1a(total.content_hash, p.content_hash);
        for (auto& v : p.violations) total.violations.push_back(std::move(v));
        total.node_outputs = std::move(p.node_outputs); // last phase's outputs win
    }
    return total;
}

} // namespace pathlab::sim

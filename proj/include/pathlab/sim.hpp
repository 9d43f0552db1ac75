#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pathlab/bits.hpp"
#include "pathlab/graph.hpp"

namespace pathlab::sim {

// A message is a sequence of fields; each field carries an explicit bit
// width, and bandwidth is checked on the encoded bit length.
struct Field {
    uint64_t value;
    int bits;
};

struct Message {
    std::vector<Field> fields;
    int bit_size() const {
        int s = 0;
        for (const auto& f : fields) s += f.bits;
        return s;
    }
    Message& add(uint64_t value, int bits) {
        fields.push_back({value, bits});
        return *this;
    }
    uint64_t at(size_t i) const { return fields.at(i).value; }
    size_t size() const { return fields.size(); }
};

enum class Mode { kUnicast, kBroadcast };

struct NetworkConfig {
    int bandwidth_coeff = 4; // c in c * ceil(log2 n)
    int bandwidth_bits = 0;  // explicit override; 0 = derive from coeff
    Mode mode = Mode::kUnicast;
    uint64_t seed = 0;
    int64_t round_limit = 1000000;
    bool log_messages = false; // full per-round message dump

    int resolved_bandwidth(int n) const {
        return bandwidth_bits > 0 ? bandwidth_bits : bandwidth_coeff * id_bits(n);
    }
    // a node id must fit in one message
    void validate(int n) const {
        if (resolved_bandwidth(n) < id_bits(n))
            throw std::invalid_argument("NetworkConfig: bandwidth below ceil(log2 n)");
        if (round_limit <= 0) throw std::invalid_argument("NetworkConfig: round_limit must be positive");
    }
};

struct LocalView {
    int id = 0;
    int n = 0;
    std::vector<int> neighbors; // sorted ids
    uint64_t shared_seed = 0;   // shared randomness: mix64(shared_seed, tag)
    uint64_t private_seed = 0;  // seed for the node's private stream
};

class Outbox {
public:
    void broadcast(Message m) {
        if (bcast_) throw std::logic_error("Outbox: broadcast already set this round");
        bcast_ = std::move(m);
    }
    void send(int neighbor_id, Message m) {
        if (mode_ == Mode::kBroadcast)
            throw std::logic_error("Outbox: unicast send in broadcast mode");
        unicast_.emplace_back(neighbor_id, std::move(m));
    }

private:
    friend class Engine;
    Mode mode_ = Mode::kUnicast;
    std::optional<Message> bcast_;
    std::vector<std::pair<int, Message>> unicast_;
};

struct Delivery {
    int from;
    const Message* msg;
};

// Inbox of one node for one round. Broadcast deliveries are viewed through
// the round's broadcast table instead of being materialized per node.
class Inbox {
public:
    template <typename F>
    void for_each(F&& f) const {
        if (bcast_table_)
            for (int v : *neighbors_)
                if ((*bcast_table_)[v]) f(v, *(*bcast_table_)[v]);
        if (unicast_)
            for (const auto& d : *unicast_) f(d.from, *d.msg);
    }
    bool empty() const {
        if (unicast_ && !unicast_->empty()) return false;
        if (bcast_table_)
            for (int v : *neighbors_)
                if ((*bcast_table_)[v]) return false;
        return true;
    }

private:
    friend class Engine;
    const std::vector<const Message*>* bcast_table_ = nullptr;
    const std::vector<int>* neighbors_ = nullptr;
    const std::vector<Delivery>* unicast_ = nullptr;
};

class NodeProgram {
public:
    virtual ~NodeProgram() = default;
    virtual void init(const LocalView& view) = 0;
    virtual void step(int64_t round, const Inbox& inbox, Outbox& out) = 0;
    virtual bool done() const = 0;
    virtual nlohmann::json output() const { return nullptr; }
};

using ProgramFactory = std::function<std::unique_ptr<NodeProgram>(int)>;

struct Violation {
    int64_t round;
    int from;
    int to; // -1 for broadcast
    int bits;
    std::string kind;
};

struct RoundStats {
    int64_t messages = 0; // directed deliveries
    int64_t max_bits = 0;
    int64_t total_bits = 0;
};

struct LoggedMessage {
    int64_t round;
    int from;
    int to;
    std::vector<Field> fields;
};

struct Transcript {
    int64_t rounds_used = 0;
    bool timed_out = false;
    bool aborted = false;
    int64_t total_messages = 0;
    int64_t max_message_bits = 0;
    uint64_t content_hash = 0; // fnv over every delivered message
    std::vector<RoundStats> per_round;
    std::vector<uint64_t> round_hashes; // per-round outbox content hash
    std::vector<Violation> violations;
    std::vector<nlohmann::json> node_outputs;
    std::vector<LoggedMessage> message_log; // only with cfg.log_messages

    nlohmann::json to_json() const;
};

// Test hook: drop the single directed message (round, from, to).
struct DropSpec {
    int64_t round = -1;
    int from = -1;
    int to = -1;
};

Transcript run(const ProgramFactory& factory, const Graph& g, const NetworkConfig& cfg,
               const DropSpec* drop = nullptr);

// Merges phase transcripts: rounds add up, stats aggregate.
Transcript combine(std::vector<Transcript> phases);

} // namespace pathlab::sim

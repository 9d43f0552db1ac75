#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "pathlab/oracles.hpp"

namespace pathlab::qc4 {

// Round-cost model for the quantum primitives: ground truth is computed
// classically, searches and amplification are charged by formula.
struct QuantumCostModel {
    double search_constant = 2.0; // c_q
    int polylog_exponent = 0;     // multiply charges by ceil(log2 n)^e
    double delta_error = 0.25;    // one-sided error target of amplification

    struct PhaseCharge {
        std::string phase;
        double rounds;
    };
    std::vector<PhaseCharge> ledger;

    double polylog(int n) const { return std::pow(id_bits(n), polylog_exponent); }

    // find a marked element of a size-|X| set, T rounds per evaluation
    double search_charge(double set_size, double eval_rounds, int n) const {
        return std::ceil(search_constant * std::sqrt(std::max(1.0, set_size))) *
               std::max(1.0, eval_rounds) * polylog(n);
    }

    // boost a one-sided success-eps decision to constant success
    double amplify_charge(double eps, double inner_rounds, double diam) const {
        double reps = std::ceil(search_constant / std::sqrt(std::max(1e-12, eps)));
        double pl = std::max(1.0, std::ceil(std::log2(1.0 / delta_error)));
        return reps * (diam + inner_rounds) * pl;
    }

    void charge(const std::string& phase, double rounds) { ledger.push_back({phase, rounds}); }
    double total() const {
        double t = 0;
        for (auto& c : ledger) t += c.rounds;
        return t;
    }
    nlohmann::json ledger_json() const {
        nlohmann::json j = nlohmann::json::array();
        for (auto& c : ledger) j.push_back({{"phase", c.phase}, {"rounds", c.rounds}});
        return j;
    }
};

enum class Variant { kNaive, kAmplified, kBucketed };

std::string variant_name(Variant v);

struct PhaseResult {
    bool found = false;
    std::array<int, 4> witness{-1, -1, -1, -1};
    double charged = 0.0;
    int retries = 0;
    // heavy phase: fraction of heavy witnesses the sampled buckets expose,
    // -1 when no witness exists
    double sample_exposure = -1.0;
};

// light vertices broadcast their lists; every edge searches the intersection
// of its candidate set with the far endpoint's neighborhood
PhaseResult detect_light_c4(const Graph& g, int delta, QuantumCostModel& cost);

// heavy side: random bucket labels, one sampled bucket pulled per node, a
// per-edge marked-element search, then amplification per the chosen variant
PhaseResult detect_heavy_c4(const Graph& g, int delta, uint64_t seed, QuantumCostModel& cost,
                            Variant variant);

struct DetectResult {
    bool found = false;
    double charged = 0.0;
    double light_charged = 0.0;
    double heavy_charged = 0.0;
    PhaseResult light, heavy;
    nlohmann::json to_json() const;
};

// light phase plus heavy phase; delta_policy 0 selects ceil(sqrt(n))
DetectResult detect_induced_c4(const Graph& g, uint64_t seed, QuantumCostModel cost,
                               Variant variant = Variant::kBucketed, int delta_policy = 0);
bool detect_majority(const Graph& g, uint64_t seed, const QuantumCostModel& cost,
                     Variant variant = Variant::kBucketed, int runs = 3);

// the candidate sets, exposed for the literal-definition probes
std::vector<int> light_candidate_set(const Graph& g, int delta, int v);
std::vector<int> heavy_candidate_set(const Graph& g, int delta, uint64_t seed, int u, int v);

// colored 2-ball instance: distance-2 nodes get color 2, neighbors draw from
// {1, 3}
struct ReductionInstance {
    Graph subgraph; // colored
    std::vector<int> original_ids;
};
ReductionInstance ordered_p3_reduction(const Graph& g, int u, uint64_t seed);

// least-squares slope of log(charged) against log(n)
double fit_exponent(const std::vector<std::pair<int, double>>& points);

} // namespace pathlab::qc4

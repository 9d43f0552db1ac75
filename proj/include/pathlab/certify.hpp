#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pathlab/p5.hpp"

namespace pathlab::cert {

using p5::Edge;

// Decoded per-node certificate. The wire form is a bit-packed field
// sequence; all widths derive from n.
struct Cert {
    int n = 0;
    std::vector<int> neighbors;
    std::vector<int> dist_self; // distance vector from this node, 0..7
    int root_id = -1;
    std::vector<int> dist_root; // shared copy of the root's vector
    int groups = 1;
    std::vector<int> group;          // 1..s for every node
    std::vector<int> r_list;         // the root's neighbors in label order
    std::vector<uint64_t> class_totals; // incidence sums: tilde22, fbad, e23, e33
    std::vector<uint64_t> class_shares; // subtree partial per counter
    std::vector<uint64_t> pattern_totals; // c(H), one per catalog pattern
    std::vector<uint64_t> pattern_shares; // subtree partial per pattern
    std::vector<uint8_t> edge_flags;  // per neighbor: reachability flag
    std::vector<uint8_t> edge_class;  // per neighbor: 0 plain, 1 marked, 2 bad
    bool labeled = false;
    std::vector<Edge> payload; // assigned group-pair edges, label nodes only
};

struct CertificateBundle {
    int n = 0;
    std::vector<std::vector<uint8_t>> blob; // wire form per node
    std::vector<size_t> bits;               // encoded size per node

    size_t max_bits() const;
    nlohmann::json debug_json() const;
};

std::vector<uint8_t> encode_cert(const Cert& c);
size_t encoded_bits(const Cert& c);
Cert decode_cert(const std::vector<uint8_t>& blob, size_t bits, int expect_n);

// Honest prover. Runs on any connected graph; the guarantees hold for
// P5-free inputs.
CertificateBundle prove(const Graph& g, uint64_t seed = 0);

struct VerifyResult {
    std::vector<bool> accept;         // per node
    std::vector<std::string> reasons; // first failed check per rejecting node
    bool all_accept = false;
};

// Locality-1 verification: each node's verdict is a pure function of its own
// id, its true incident neighbor ids, and the certificates of its closed
// neighborhood.
VerifyResult verify(const Graph& g, const CertificateBundle& bundle);

// The per-node verdict computed from exactly the 1-ball inputs.
struct NodeInputs {
    int self = 0;
    int n = 0;
    std::vector<int> true_neighbors;
    const std::vector<uint8_t>* own_blob = nullptr;
    size_t own_bits = 0;
    std::vector<const std::vector<uint8_t>*> nbr_blobs;
    std::vector<size_t> nbr_bits;
};
bool verify_node(const NodeInputs& in, std::string* reason = nullptr);

// ---------------------------------------------------------------------------
// the spanning-tree sum sub-scheme

struct SumCertificate {
    uint64_t total = 0;
    std::vector<uint64_t> partial; // claimed subtree sums
};

SumCertificate honest_sum_certificate(const sim::RootedTree& tree,
                                      const std::vector<uint64_t>& values);
// per-node verdicts; all accept iff the recurrences hold and total matches
std::vector<bool> certify_sum(const sim::RootedTree& tree, const std::vector<uint64_t>& values,
                              const SumCertificate& cert);

// ---------------------------------------------------------------------------
// mutation helpers for soundness fuzzing

CertificateBundle mutate_bitflip(const CertificateBundle& b, uint64_t seed, int flips = 1);
CertificateBundle mutate_semantic(const Graph& g, const CertificateBundle& b, uint64_t seed);

// file round-trip
void save_bundle(const CertificateBundle& b, const std::string& path);
CertificateBundle load_bundle(const std::string& path);

} // namespace pathlab::cert

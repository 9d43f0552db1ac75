#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "pathlab/oracles.hpp"

namespace pathlab::gadget {

enum class Family { kP11, kP22, kP8d, kNofP5, kOrderedP5 };

std::string family_name(Family f);

struct GadgetGraph {
    Graph graph;
    Family family = Family::kP11;
    int n_param = 0;
    int d_param = 1;
    int k_target = 0;        // the path length whose absence encodes DISJ = 1
    bool ordered = false;    // ordered-path semantics
    std::vector<int> alice;  // node sides (two-party families)
    std::vector<int> bob;
    nlohmann::json metadata; // construction notes, substituted index formulas

    long long cut_size() const;
};

// 1 iff no index carries a 1 in both strings
int disj(const std::vector<int>& x, const std::vector<int>& y);

// d = 1 family: blocks of cliques with shortcut edges on 0-bits,
// |x| = |y| = n^2, 4n + 7 nodes.
GadgetGraph build_p11(const std::vector<int>& x, const std::vector<int>& y, int n);

// d >= 3 family: level-d ladders with code rows; requires integral n^(1/d).
GadgetGraph build_p8d(const std::vector<int>& x, const std::vector<int>& y, int n, int d);

// d = 2 family; requires integral sqrt(n).
GadgetGraph build_p22(const std::vector<int>& x, const std::vector<int>& y, int n);

// Three-party family over a triangle-packing tripartite base graph.
// base_parts assigns each base node to part 0, 1 or 2.
Graph build_nof_p5(const std::vector<int>& xa, const std::vector<int>& xb,
                   const std::vector<int>& xc, const Graph& base,
                   const std::vector<int>& base_parts);
GadgetGraph build_nof_p5_gadget(const std::vector<int>& xa, const std::vector<int>& xb,
                                const std::vector<int>& xc, const Graph& base,
                                const std::vector<int>& base_parts);

// Colored family whose ordered 5-path encodes intersection.
GadgetGraph build_ordered_p5(const std::vector<int>& x, const std::vector<int>& y, int n);

// Replaces the family's designated edges by longer paths with fresh nodes;
// steps = 0 is the identity.
GadgetGraph lengthen_for_locality(const GadgetGraph& gg, int steps);

// Triangle enumeration of a base candidate; throws with an offending edge
// when some edge lies in none or several triangles.
std::vector<std::array<int, 3>> validate_triangle_packing(const Graph& base,
                                                          const std::vector<int>& parts);

// iff verification against the oracle, positive side guided by the witness
// block structure
struct IffCheck {
    bool conclusive = false; // oracle finished within budget
    bool pass = false;       // freeness matched the disjointness prediction
    bool expected_free = false;
    Verdict observed = Verdict::kBudget;
    double seconds = 0.0;
};
IffCheck verify_gadget(const GadgetGraph& gg, const std::vector<int>& x,
                       const std::vector<int>& y, const OracleBudget& budget);

// structural probe: a found witness path for the d = 2 family must use two
// nodes from each block column and all six specials
bool p22_witness_shape_ok(const GadgetGraph& gg, const std::vector<int>& path);
std::vector<int> find_witness_path(const GadgetGraph& gg, const std::vector<int>& x,
                                   const std::vector<int>& y);

} // namespace pathlab::gadget

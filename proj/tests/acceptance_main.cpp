// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "pathlab/certify.hpp"
#include "pathlab/enumerate.hpp"
#include "pathlab/gadgets.hpp"
#include "pathlab/p4.hpp"
#include "pathlab/p5.hpp"
#include "pathlab/quantum_c4.hpp"

using namespace pathlab;
using p5::Edge;
using p5::make_edge;

namespace {

int g_pass = 0, g_fail = 0;
long long g_violations = 0; // aggregated over every transcript this run
long long g_transcripts = 0;

void note_transcript(const sim::Transcript& t) {
    ++g_transcripts;
    g_violations += static_cast<long long>(t.violations.size());
}

void report(int idx, bool pass, const std::string& detail) {
    printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", idx, detail.c_str());
    fflush(stdout);
    if (pass) ++g_pass;
    else ++g_fail;
}

// ---------------------------------------------------------------------------

bool criterion1_p4_agreement() {
    long long mismatches = 0, total = 0;
    int idx = 0;
    for (int n = 1; n <= 8; ++n)
        for (const auto& g : connected_graph_classes(n)) {
            bool oracle_free = n < 4 || induced_path_exists(g, 4) == Verdict::kNo;
            p4::P4Config cfg;
            cfg.seed = mix64(1, idx++);
            int yes = 0;
            for (int r = 0; r < 3; ++r) {
                p4::P4Config c = cfg;
                c.seed = mix64(cfg.seed, r);
                auto d = p4::decide_p4_free(g, c);
                note_transcript(d.transcript);
                if (d.accept) ++yes;
            }
            if ((yes >= 2) != oracle_free) ++mismatches;
            ++total;
        }
    long long exhaustive = total;
    Rng rng(777);
    for (int t = 0; t < 300; ++t) {
        int n = 10 + static_cast<int>(rng.below(41));
        auto g = random_connected_gnp(n, 0.08 + 0.3 * rng.uniform(), mix64(2, t));
        bool oracle_free = induced_path_exists(g, 4) == Verdict::kNo;
        int yes = 0;
        for (int r = 0; r < 3; ++r) {
            p4::P4Config c;
            c.seed = mix64(900 + t, r);
            auto d = p4::decide_p4_free(g, c);
            note_transcript(d.transcript);
            if (d.accept) ++yes;
        }
        if ((yes >= 2) != oracle_free) ++mismatches;
        ++total;
    }
    char buf[200];
    snprintf(buf, sizeof buf,
             "4-path agreement on %lld exhaustive classes + 300 random graphs: %lld disagreements",
             exhaustive, mismatches);
    report(1, mismatches == 0, buf);
    return mismatches == 0;
}

bool criterion2_p5_agreement() {
    long long mismatches = 0, total = 0;
    int idx = 0;
    for (int n = 1; n <= 8; ++n)
        for (const auto& g : connected_graph_classes(n)) {
            bool oracle_free = n < 5 || induced_path_exists(g, 5) == Verdict::kNo;
            int yes = 0;
            for (int r = 0; r < 3; ++r) {
                p5::P5Config c;
                c.seed = mix64(3000 + idx, r);
                auto d = p5::decide_p5_free(g, c);
                note_transcript(d.transcript);
                if (d.accept) ++yes;
            }
            if ((yes >= 2) != oracle_free) ++mismatches;
            ++idx;
            ++total;
        }
    Rng rng(888);
    for (int t = 0; t < 300; ++t) {
        int n = 10 + static_cast<int>(rng.below(51));
        auto g = random_connected_gnp(n, 0.08 + 0.3 * rng.uniform(), mix64(4, t));
        bool oracle_free = induced_path_exists(g, std::min(5, g.n())) == Verdict::kNo;
        int yes = 0;
        for (int r = 0; r < 3; ++r) {
            p5::P5Config c;
            c.seed = mix64(7000 + t, r);
            auto d = p5::decide_p5_free(g, c);
            note_transcript(d.transcript);
            if (d.accept) ++yes;
        }
        if ((yes >= 2) != oracle_free) ++mismatches;
        ++total;
    }
    // every collection reject must carry an induced 5-path
    long long rejects = 0, rejects_bad = 0;
    idx = 0;
    for (int n = 6; n <= 8; ++n)
        for (const auto& g : connected_graph_classes(n)) {
            if ((idx++ % (n == 8 ? 7 : 1)) != 0) continue; // sample the 8-node tier
            if (diameter(g) != 3) continue;
            p5::P5Config cfg;
            cfg.seed = mix64(5, idx);
            cfg.sparse_constant = 0.0;
            auto st = p5::p_collect(g, cfg);
            note_transcript(st.transcript);
            if (st.rejected) {
                ++rejects;
                if (induced_path_exists(g, 5) != Verdict::kYes) ++rejects_bad;
            }
        }
    bool pass = mismatches == 0 && rejects_bad == 0 && rejects > 0;
    char buf[240];
    snprintf(buf, sizeof buf,
             "5-path agreement on %lld instances: %lld disagreements; %lld collection rejects, "
             "%lld without an induced 5-path",
             total, mismatches, rejects, rejects_bad);
    report(2, pass, buf);
    return pass;
}

bool criterion3_round_bounds() {
    // 4-path: random cographs, rounds <= C * ceil(log2 n)
    std::vector<double> c4_by_seed;
    bool ok = true;
    for (uint64_t seed = 1; seed <= 3; ++seed) {
        double worst = 0;
        for (int e = 6; e <= 12; ++e) {
            int n = 1 << e;
            auto g = random_cograph(n, mix64(10 + seed, e));
            p4::P4Config cfg;
            cfg.seed = mix64(20 + seed, e);
            auto d = p4::decide_p4_free(g, cfg);
            note_transcript(d.transcript);
            if (!d.accept) ok = false;
            worst = std::max(worst,
                             static_cast<double>(d.transcript.rounds_used) / id_bits(n));
        }
        c4_by_seed.push_back(worst);
    }
    // 5-path: random connected graphs, rounds <= C * n * ceil(log2 n)^2
    std::vector<double> c5_by_seed;
    for (uint64_t seed = 1; seed <= 3; ++seed) {
        double worst = 0;
        for (int e = 5; e <= 9; ++e) {
            int n = 1 << e;
            auto g = random_connected_gnp(n, std::min(0.5, 16.0 / n + 0.05), mix64(30 + seed, e));
            p5::P5Config cfg;
            cfg.seed = mix64(40 + seed, e);
            auto d = p5::decide_p5_free(g, cfg);
            note_transcript(d.transcript);
            double denom = static_cast<double>(n) * id_bits(n) * id_bits(n);
            worst = std::max(worst, static_cast<double>(d.transcript.rounds_used) / denom);
        }
        c5_by_seed.push_back(worst);
    }
    auto stable = [](const std::vector<double>& cs) {
        double mean = 0;
        for (double c : cs) mean += c;
        mean /= static_cast<double>(cs.size());
        for (double c : cs)
            if (std::abs(c - mean) > 0.2 * mean) return false;
        return true;
    };
    bool pass = ok && stable(c4_by_seed) && stable(c5_by_seed);
    char buf[240];
    snprintf(buf, sizeof buf,
             "fitted constants C4 = {%.2f, %.2f, %.2f} (rounds per log n), C5 = {%.3f, %.3f, %.3f} "
             "(rounds per n log^2 n); stability within 20%%: %s",
             c4_by_seed[0], c4_by_seed[1], c4_by_seed[2], c5_by_seed[0], c5_by_seed[1],
             c5_by_seed[2], pass ? "yes" : "no");
    report(3, pass, buf);
    return pass;
}

bool criterion4_catalog() {
    // independent route: enumerate all 1024 graphs on 5 labeled nodes, dedupe
    // by explicit permutation isomorphism, filter by Hamiltonian path
    constexpr int pair_index[5][5] = {{-1, 0, 1, 2, 3},
                                      {0, -1, 4, 5, 6},
                                      {1, 4, -1, 7, 8},
                                      {2, 5, 7, -1, 9},
                                      {3, 6, 8, 9, -1}};
    auto apply_perm = [&](uint16_t mask, const std::array<int, 5>& perm) {
        uint16_t out = 0;
        for (int i = 0; i < 5; ++i)
            for (int j = i + 1; j < 5; ++j)
                if (mask & (1u << pair_index[i][j]))
                    out |= static_cast<uint16_t>(1u << pair_index[perm[i]][perm[j]]);
        return out;
    };
    auto has_ham_path = [&](uint16_t mask) {
        std::array<int, 5> order = {0, 1, 2, 3, 4};
        do {
            bool ok = true;
            for (int i = 0; i + 1 < 5 && ok; ++i)
                if (!(mask & (1u << pair_index[order[i]][order[i + 1]]))) ok = false;
            if (ok) return true;
        } while (std::next_permutation(order.begin(), order.end()));
        return false;
    };
    std::vector<uint16_t> reps; // class representatives among traceable graphs
    for (uint32_t mask = 0; mask < 1024; ++mask) {
        if (!has_ham_path(static_cast<uint16_t>(mask))) continue;
        bool seen = false;
        for (uint16_t rep : reps) {
            std::array<int, 5> perm = {0, 1, 2, 3, 4};
            do {
                if (apply_perm(static_cast<uint16_t>(mask), perm) == rep) {
                    seen = true;
                    break;
                }
            } while (std::next_permutation(perm.begin(), perm.end()));
            if (seen) break;
        }
        if (!seen) reps.push_back(static_cast<uint16_t>(mask));
    }
    // the catalog excludes the bare 5-path and the complete graph
    uint16_t path_mask = 0;
    for (int i = 0; i + 1 < 5; ++i) path_mask |= static_cast<uint16_t>(1u << pair_index[i][i + 1]);
    const auto& cat = pattern_catalog();
    int matched = 0;
    for (uint16_t rep : reps) {
        uint16_t canon = canon5(rep);
        bool excluded = canon == canon5(path_mask) || canon == canon5(0x3ff);
        bool in_catalog = cat.index_of(canon) >= 0;
        if (in_catalog != !excluded) matched = -1000000;
        if (in_catalog) ++matched;
    }
    bool pass = cat.patterns.size() == 16 && reps.size() == 18 && matched == 16;
    char buf[200];
    snprintf(buf, sizeof buf,
             "catalog has %zu patterns; independent enumeration found %zu traceable classes, "
             "16 of them catalogued (path and complete graph excluded)",
             cat.patterns.size(), reps.size());
    report(4, pass, buf);
    return pass;
}

// randomized instance with bad-edge and deep-edge structure
Graph special_instance(Rng& rng, bool& ok) {
    // core: root 0, guards, shared contact, bad pair, relay, deep node
    std::vector<std::pair<int, int>> e;
    int guards = 4 + static_cast<int>(rng.below(3));
    int next = 1;
    std::vector<int> guard_ids;
    for (int i = 0; i < guards; ++i) guard_ids.push_back(next++);
    int a = next++;
    for (int c : guard_ids) e.push_back({0, c});
    e.push_back({0, a});
    int u = next++, v = next++;
    e.push_back({u, a});
    e.push_back({v, a});
    e.push_back({u, v});
    int t = next++;
    for (int c : guard_ids) e.push_back({t, c});
    e.push_back({t, a});
    int z = next++;
    e.push_back({z, t});
    if (rng.coin(0.5)) { // second deep node forming a deep internal edge
        int z2 = next++;
        e.push_back({z2, t});
        e.push_back({z, z2});
    }
    if (rng.coin(0.6)) { // a dangerous 5-cycle through the bad pair
        int w1 = next++, w2 = next++;
        e.push_back({w1, u});
        e.push_back({w1, a});
        e.push_back({w1, t});
        e.push_back({w2, v});
        e.push_back({w2, a});
        e.push_back({w2, t});
    }
    if (rng.coin(0.5)) { // second bad pair on the same contact
        int u2 = next++, v2 = next++;
        e.push_back({u2, a});
        e.push_back({v2, a});
        e.push_back({u2, v2});
    }
    while (rng.coin(0.4)) { // plain layer-2 fillers
        int f = next++;
        e.push_back({f, a});
        if (rng.coin(0.5)) e.push_back({f, t});
    }
    Graph g = Graph::from_edges(next, e);
    // random relabeling varies the designated counters
    std::vector<int> perm(next);
    for (int i = 0; i < next; ++i) perm[i] = i;
    rng.shuffle(perm);
    g = relabel(g, perm);
    ok = g.connected() && diameter(g) == 3;
    return g;
}

bool criterion5_count_identity() {
    int checked = 0, wrong = 0, attempts = 0;
    Rng rng(20240809);
    while (checked < 100 && attempts < 4000) {
        ++attempts;
        bool ok = false;
        Graph g = special_instance(rng, ok);
        if (!ok) continue;
        p5::P5Config cfg;
        cfg.seed = mix64(60, attempts);
        cfg.sparse_constant = 0.0;
        auto st = p5::p_collect(g, cfg);
        note_transcript(st.transcript);
        if (st.rejected || st.aborted) continue;
        if (st.fbad.empty() && st.e33.empty()) continue;
        if (p5::detect_special_paths(g, st).found) continue;
        auto cnt = p5::count_dangerous(g, st, cfg);
        note_transcript(cnt.transcript);
        // central recomputation of both sides
        std::set<Edge> keep;
        for (auto [x, y] : g.edges()) {
            Edge ed = make_edge(x, y);
            if (!st.fbad.count(ed) && !st.e33.count(ed)) keep.insert(ed);
        }
        Graph reduced =
            Graph::from_edges(g.n(), std::vector<std::pair<int, int>>(keep.begin(), keep.end()));
        uint64_t in_reduced = count_induced_copies_mask(reduced, canon5_of(path_graph(5)));
        uint64_t avoiding = 0;
        int nodes[5];
        for (nodes[0] = 0; nodes[0] < g.n() - 4; ++nodes[0])
            for (nodes[1] = nodes[0] + 1; nodes[1] < g.n() - 3; ++nodes[1])
                for (nodes[2] = nodes[1] + 1; nodes[2] < g.n() - 2; ++nodes[2])
                    for (nodes[3] = nodes[2] + 1; nodes[3] < g.n() - 1; ++nodes[3])
                        for (nodes[4] = nodes[3] + 1; nodes[4] < g.n(); ++nodes[4]) {
                            if (canon5(g.induced_mask5(nodes)) != canon5_of(path_graph(5)))
                                continue;
                            bool uses = false;
                            for (int i = 0; i < 5 && !uses; ++i)
                                for (int j = i + 1; j < 5; ++j) {
                                    if (!g.has_edge(nodes[i], nodes[j])) continue;
                                    Edge ed = make_edge(nodes[i], nodes[j]);
                                    if (st.fbad.count(ed) || st.e33.count(ed)) {
                                        uses = true;
                                        break;
                                    }
                                }
                            if (!uses) ++avoiding;
                        }
        if (cnt.t != in_reduced - avoiding || cnt.non_catalog_dangerous) ++wrong;
        ++checked;
    }
    bool pass = checked >= 100 && wrong == 0;
    char buf[200];
    snprintf(buf, sizeof buf,
             "dangerous-count identity exact on %d/%d qualifying instances (%d generator attempts)",
             checked - wrong, checked, attempts);
    report(5, pass, buf);
    return pass;
}

bool criterion6_certification() {
    // completeness corpus: all 5-path-free connected classes up to 8 nodes
    // plus 100 random 5-path-free graphs
    long long complete_total = 0, complete_fail = 0;
    // the reported constant is asymptotic: fixed per-certificate counter
    // fields dominate n log n on tiny graphs, so C is taken over n >= 8
    double worst_c = 0;
    int idx = 0;
    for (int n = 1; n <= 8; ++n)
        for (const auto& g : connected_graph_classes(n)) {
            if (n >= 5 && induced_path_exists(g, 5) == Verdict::kYes) continue;
            auto bundle = cert::prove(g, mix64(70, idx++));
            auto res = cert::verify(g, bundle);
            ++complete_total;
            if (!res.all_accept) ++complete_fail;
            if (g.n() >= 8)
                worst_c = std::max(worst_c, static_cast<double>(bundle.max_bits()) /
                                                (g.n() * id_bits(g.n())));
        }
    Rng rng(4141);
    int found = 0;
    uint64_t probe = 0;
    while (found < 100 && probe < 60000) {
        ++probe;
        Graph g = rng.coin(0.5) ? random_cograph(10 + static_cast<int>(rng.below(13)), mix64(80, probe))
                                : random_connected_gnp(10 + static_cast<int>(rng.below(13)),
                                                       0.25 + 0.4 * rng.uniform(), mix64(81, probe));
        if (induced_path_exists(g, std::min(5, g.n())) != Verdict::kNo) continue;
        ++found;
        auto bundle = cert::prove(g, probe);
        auto res = cert::verify(g, bundle);
        ++complete_total;
        if (!res.all_accept) ++complete_fail;
        worst_c =
            std::max(worst_c, static_cast<double>(bundle.max_bits()) / (g.n() * id_bits(g.n())));
    }
    // soundness: semantic mutants on non-free instances
    long long mutant_trials = 0, mutant_accepts = 0;
    std::vector<Graph> nonfree = {petersen_graph()};
    for (int t = 0; static_cast<int>(nonfree.size()) < 20 && t < 500; ++t) {
        auto g = random_connected_gnp(9 + t % 6, 0.25, mix64(90, t));
        if (induced_path_exists(g, 5) == Verdict::kYes) nonfree.push_back(g);
    }
    for (size_t i = 0; i < nonfree.size(); ++i) {
        const Graph& g = nonfree[i];
        auto bundle = cert::prove(g, i);
        if (cert::verify(g, bundle).all_accept) ++mutant_accepts; // honest style must reject
        for (int m = 0; m < 100; ++m) {
            auto mut = cert::mutate_semantic(g, bundle, mix64(95 + i, m));
            ++mutant_trials;
            if (cert::verify(g, mut).all_accept) ++mutant_accepts;
        }
    }
    bool pass = complete_fail == 0 && found >= 100 && mutant_accepts == 0 && worst_c <= 64.0;
    char buf[260];
    snprintf(buf, sizeof buf,
             "completeness %lld/%lld; certificate size <= %.2f * n log n bits; soundness: "
             "%lld mutant trials on %zu non-free graphs, %lld accepted",
             complete_total - complete_fail, complete_total, worst_c, mutant_trials,
             nonfree.size(), mutant_accepts);
    report(6, pass, buf);
    return pass;
}

bool criterion7_gadgets() {
    long long fails = 0, inconclusive = 0, cut_bad = 0;
    // exhaustive n=2 for the d=1 and ordered families
    for (uint32_t xv = 0; xv < 16; ++xv)
        for (uint32_t yv = 0; yv < 16; ++yv) {
            std::vector<int> x(4), y(4);
            for (int i = 0; i < 4; ++i) {
                x[i] = (xv >> i) & 1;
                y[i] = (yv >> i) & 1;
            }
            auto g1 = gadget::build_p11(x, y, 2);
            auto c1 = gadget::verify_gadget(g1, x, y, {.max_seconds = 30});
            if (!c1.conclusive) ++inconclusive;
            else if (!c1.pass) ++fails;
            if (g1.cut_size() != 4) ++cut_bad;
            auto g2 = gadget::build_ordered_p5(x, y, 2);
            auto c2 = gadget::verify_gadget(g2, x, y, {.max_seconds = 30});
            if (!c2.conclusive) ++inconclusive;
            else if (!c2.pass) ++fails;
            if (g2.cut_size() != 4) ++cut_bad;
        }
    // sampled pairs for the d=2 and d>=3 families plus the pinned free cases
    Rng rng(246);
    int p22_runs = 0, p8d_runs = 0;
    long long sampled_inconclusive = 0, sampled_total = 0;
    auto run22 = [&](const std::vector<int>& x, const std::vector<int>& y) {
        auto gg = gadget::build_p22(x, y, 4);
        if (gg.cut_size() != 8) ++cut_bad;
        auto chk = gadget::verify_gadget(gg, x, y, {.max_seconds = 60});
        ++sampled_total;
        if (!chk.conclusive) ++sampled_inconclusive;
        else if (!chk.pass) ++fails;
        ++p22_runs;
    };
    auto run8d = [&](const std::vector<int>& x, const std::vector<int>& y) {
        auto gg = gadget::build_p8d(x, y, 8, 3);
        if (gg.cut_size() != 12) ++cut_bad;
        auto chk = gadget::verify_gadget(gg, x, y, {.max_seconds = 60});
        ++sampled_total;
        if (!chk.conclusive) ++sampled_inconclusive;
        else if (!chk.pass) ++fails;
        ++p8d_runs;
    };
    run22(std::vector<int>(16, 0), std::vector<int>(16, 0));
    run22(std::vector<int>(16, 1), std::vector<int>(16, 0));
    for (int t = 0; t < 20; ++t) {
        std::vector<int> x(16), y(16);
        for (auto& b : x) b = rng.coin(0.5);
        for (auto& b : y) b = rng.coin(0.5);
        run22(x, y);
    }
    run8d(std::vector<int>(64, 0), std::vector<int>(64, 0));
    for (int t = 0; t < 6; ++t) {
        std::vector<int> x(64), y(64);
        for (auto& b : x) b = rng.coin(0.4);
        for (auto& b : y) b = rng.coin(0.4);
        run8d(x, y);
    }
    bool budget_ok = 5 * sampled_inconclusive <= sampled_total; // at most 20%
    bool pass = fails == 0 && inconclusive == 0 && cut_bad == 0 && budget_ok;
    char buf[260];
    snprintf(buf, sizeof buf,
             "exhaustive 512/512 two-party checks, %d d=2 pairs, %d d>=3 pairs: %lld wrong, "
             "%lld inconclusive (budget share ok: %s), %lld cut mismatches",
             p22_runs, p8d_runs, fails, sampled_inconclusive, budget_ok ? "yes" : "no", cut_bad);
    report(7, pass, buf);
    return pass;
}

bool criterion8_quantum() {
    qc4::QuantumCostModel cm;
    long long mismatches = 0;
    for (int t = 0; t < 200; ++t) {
        int n = 48 + (t % 3) * 16;
        auto g = random_gnp(n, 0.06 + 0.06 * (t % 4), mix64(500, t));
        bool oracle = ref::induced_c4_exists(g);
        if (qc4::detect_majority(g, mix64(501, t), cm) != oracle) ++mismatches;
    }
    // exponent fit across three seeds, plus the variant ordering per point
    bool order_ok = true, fit_ok = true;
    double fits[3];
    for (uint64_t seed = 0; seed < 3; ++seed) {
        std::vector<std::pair<int, double>> pts;
        for (int e = 8; e <= 14; ++e) {
            int n = 1 << e;
            auto g = random_gnp(n, 8.0 / n, mix64(600 + seed, e));
            qc4::QuantumCostModel c1, c2, c3;
            double naive = qc4::detect_induced_c4(g, mix64(seed, e), c1, qc4::Variant::kNaive).charged;
            double amp =
                qc4::detect_induced_c4(g, mix64(seed, e), c2, qc4::Variant::kAmplified).charged;
            double bucket =
                qc4::detect_induced_c4(g, mix64(seed, e), c3, qc4::Variant::kBucketed).charged;
            if (!(naive >= amp && amp >= bucket)) order_ok = false;
            pts.push_back({n, bucket});
        }
        fits[seed] = qc4::fit_exponent(pts);
        if (fits[seed] < 0.67 || fits[seed] > 0.83) fit_ok = false;
    }
    bool pass = mismatches == 0 && order_ok && fit_ok;
    char buf[240];
    snprintf(buf, sizeof buf,
             "oracle agreement 200/%lld; exponent fits {%.3f, %.3f, %.3f} in [0.67, 0.83]: %s; "
             "variant ordering: %s",
             200 - mismatches, fits[0], fits[1], fits[2], fit_ok ? "yes" : "no",
             order_ok ? "monotone" : "violated");
    report(8, pass, buf);
    return pass;
}

bool criterion9_integrity() {
    // replay determinism: several seeded runs, byte-identical transcripts
    bool deterministic = true;
    for (uint64_t s = 0; s < 4; ++s) {
        auto g = random_connected_gnp(24, 0.25, mix64(700, s));
        p5::P5Config cfg;
        cfg.seed = s;
        auto a = p5::decide_p5_free(g, cfg);
        auto b = p5::decide_p5_free(g, cfg);
        note_transcript(a.transcript);
        note_transcript(b.transcript);
        if (a.transcript.to_json().dump() != b.transcript.to_json().dump()) deterministic = false;
        p4::P4Config c4;
        c4.seed = s;
        auto x = p4::decide_p4_free(g, c4);
        auto y = p4::decide_p4_free(g, c4);
        note_transcript(x.transcript);
        note_transcript(y.transcript);
        if (x.transcript.to_json().dump() != y.transcript.to_json().dump()) deterministic = false;
    }
    bool pass = deterministic && g_violations == 0;
    char buf[200];
    snprintf(buf, sizeof buf,
             "%lld transcripts this run, %lld bandwidth violations; seed replay byte-identical: %s",
             g_transcripts, g_violations, deterministic ? "yes" : "no");
    report(9, pass, buf);
    return pass;
}

} // namespace

int main() {
    criterion1_p4_agreement();
    criterion2_p5_agreement();
    criterion3_round_bounds();
    criterion4_catalog();
    criterion5_count_identity();
    criterion6_certification();
    criterion7_gadgets();
    criterion8_quantum();
    criterion9_integrity();
    printf("acceptance: %d passed, %d failed\n", g_pass, g_fail);
    return g_fail == 0 ? 0 : 1;
}

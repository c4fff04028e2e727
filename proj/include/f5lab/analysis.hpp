#pragma once

// Derived quantities and inequality audits for one (G, H, pi) instance:
// J and J', B(pi) and H', the S/S1/S2 vertex classes, good/bad missing
// crossing edges, the K(v,E,A,T) census, the E_{s,r,i} event check, the
// degree/codegree concentration census, and the per-lemma margin report.
//
// Audits are observational: at desk scale the asymptotic inequalities may
// legitimately fail, and the report records which.

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "bounds.hpp"
#include "hypergraph.hpp"
#include "motifs.hpp"
#include "solver.hpp"

namespace f5lab {

/// J: the shadow graph of H1 induced on V1.
inline Graph2 shadow_j(const Hypergraph3& h, const Partition3& pi) {
    std::vector<Edge3> h1;
    for (const Edge3& e : h.edges()) {
        int in_v1 = 0;
        for (Vertex v : e) in_v1 += pi.part(v) == 1 ? 1 : 0;
        if (in_v1 >= 2) h1.push_back(e);
    }
    const Graph2 sh = shadow(Hypergraph3::build(h.vertex_count(), h1));
    return sh.induced(pi.members(1));
}

/// B(pi): edges of G containing a Q(pi) pair, and H' = H minus them.
struct BPiResult {
    std::vector<Edge2> q_pairs;
    std::vector<Edge3> b_edges;
    Hypergraph3 h_prime;
};

inline BPiResult b_pi(const Hypergraph3& g, const Partition3& pi, double p, const Hypergraph3& h) {
    BPiResult out;
    out.q_pairs = q_set(g, pi, p);
    std::unordered_set<std::uint64_t> q_keys;
    for (const Edge2& q : out.q_pairs) q_keys.insert(detail::pair_key(q[0], q[1], g.vertex_count()));
    auto has_q_pair = [&](const Edge3& e) {
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                if (q_keys.count(detail::pair_key(e[static_cast<std::size_t>(i)], e[static_cast<std::size_t>(j)],
                                                  g.vertex_count())))
                    return true;
        return false;
    };
    for (const Edge3& e : g.edges())
        if (has_q_pair(e)) {
            out.b_edges.push_back(e);
            int in_v1 = 0;
            for (Vertex v : e) in_v1 += pi.part(v) == 1 ? 1 : 0;
            if (in_v1 < 2) throw std::logic_error("B(pi) edge with fewer than two V1 vertices");
        }
    std::vector<Edge3> keep;
    for (const Edge3& e : h.edges())
        if (!has_q_pair(e)) keep.push_back(e);
    out.h_prime = Hypergraph3::build(g.vertex_count(), keep);
    return out;
}

enum class Regime { Divided, Undivided };  // |Hbar_pi| <= delta p n^3 / ln n, or above

/// S (or S'): V1 vertices of high J-degree; S1 those with large H-crossing
/// degree, S2 the rest.
struct SClasses {
    std::vector<Vertex> s, s1, s2;
    double degree_threshold = 0.0;
};

inline SClasses classify_s(const Hypergraph3& g, const Hypergraph3& h, const Partition3& pi, const Constants& k,
                           double p, Regime regime) {
    const int n = g.vertex_count();
    if (n < 2) throw std::invalid_argument("classify_s requires n >= 2");
    const Graph2 j = shadow_j(h, pi);
    const double threshold = regime == Regime::Divided
                                 ? k.eps1 * static_cast<double>(n) / std::sqrt(std::log(static_cast<double>(n)))
                                 : k.eps1 * static_cast<double>(n);
    const double crossing_threshold = k.eps2 * p * static_cast<double>(n) * static_cast<double>(n);
    SClasses out;
    out.degree_threshold = threshold;
    for (Vertex x : pi.members(1)) {
        if (static_cast<double>(j.degree(x)) < threshold) continue;
        out.s.push_back(x);
        const std::int64_t crossing = link_degree(h, x, pi.members(2), pi.members(3));
        if (static_cast<double>(crossing) >= crossing_threshold)
            out.s1.push_back(x);
        else
            out.s2.push_back(x);
    }
    return out;
}

/// Lemma-16-style classification of missing crossing edges xyz (x in V1).
struct GoodBad {
    std::vector<Edge3> good, bad;
};

inline GoodBad good_bad_split(const Hypergraph3& g, const std::vector<Edge3>& hbar_edges, const Graph2& j_prime,
                              const Partition3& pi, const Constants& k, double p, int n) {
    const double sq = std::sqrt(std::log(static_cast<double>(n)));
    const double lln = std::log(std::log(static_cast<double>(n)));
    const double band1 = k.eps1 * n / sq, band2 = k.eps1 * n;
    const double thresh1 = p * n * lln / (500.0 * sq), thresh2 = 3.0 * k.eps1 * p * n;
    GoodBad out;
    for (const Edge3& e : hbar_edges) {
        Vertex x = -1;
        for (Vertex v : e)
            if (pi.part(v) == 1) x = v;
        if (x < 0) throw std::invalid_argument("missing crossing edge without a V1 vertex");
        Vertex y = -1, z = -1;
        for (Vertex v : e)
            if (v != x) (y < 0 ? y : z) = v;
        const double dj = static_cast<double>(j_prime.degree(x));
        std::int64_t overlap = 0;
        for (Vertex w : g.thirds(y, z)) overlap += j_prime.contains(x, w) ? 1 : 0;
        const bool bad = (dj <= band1 && static_cast<double>(overlap) >= thresh1) ||
                         (band1 < dj && dj <= band2 && static_cast<double>(overlap) >= thresh2);
        (bad ? out.bad : out.good).push_back(e);
    }
    return out;
}

/// K(v,E,A,T) and its G-intersection, with the F5 witness per member.
struct KOfWitness {
    Edge3 xyz;
    Edge3 host_edge;  // the e in E with x in e, y,z outside
};

struct KOfReport {
    std::int64_t k_count = 0;
    std::int64_t g_count = 0;
    std::vector<KOfWitness> witnesses;  // one per member of G(v,E,A,T)
};

inline KOfReport k_of(const Hypergraph3& g, Vertex v, const std::vector<Edge3>& e_set,
                      const std::vector<Vertex>& a_set, const std::vector<Edge2>& t_set) {
    const int n = g.vertex_count();
    const auto in_a = detail::membership(n, a_set);
    if (v < 0 || v >= n || in_a[static_cast<std::size_t>(v)])
        throw std::invalid_argument("k_of requires A a subset of [n) excluding v");
    for (const Edge2& yz : t_set) {
        if (!g.contains(v, yz[0], yz[1])) throw std::invalid_argument("T pair is not a link pair of v in G");
        if (in_a[static_cast<std::size_t>(yz[0])] || in_a[static_cast<std::size_t>(yz[1])])
            throw std::invalid_argument("T pair touches A");
        if (yz[0] == v || yz[1] == v) throw std::invalid_argument("T pair contains v");
    }
    // E filtered to edges through v meeting A (broader callers pass H1 here).
    std::vector<std::vector<Vertex>> w_of(static_cast<std::size_t>(n));
    for (const Edge3& e : e_set) {
        bool through_v = e[0] == v || e[1] == v || e[2] == v;
        if (!through_v) continue;
        for (Vertex x : e)
            if (x != v && in_a[static_cast<std::size_t>(x)]) {
                for (Vertex w : e)
                    if (w != v && w != x) w_of[static_cast<std::size_t>(x)].push_back(w);
            }
    }
    KOfReport rep;
    for (Vertex x : a_set) {
        const auto& ws = w_of[static_cast<std::size_t>(x)];
        if (ws.empty()) continue;
        for (const Edge2& yz : t_set) {
            if (yz[0] == x || yz[1] == x) continue;
            Vertex found_w = -1;
            for (Vertex w : ws)
                if (w != yz[0] && w != yz[1]) {
                    found_w = w;
                    break;
                }
            if (found_w < 0) continue;
            rep.k_count++;
            if (g.contains(x, yz[0], yz[1])) {
                rep.g_count++;
                rep.witnesses.push_back(KOfWitness{make_edge3(x, yz[0], yz[1]), make_edge3(v, x, found_w)});
            }
        }
    }
    return rep;
}

/// Empirical E_{s,r,i} check: over every (v, S) with |S| = s, v outside S,
/// the number of pairs {y,z} outside S with vyz in G and d_S(y,z) >= i is at
/// most r. Exhaustive only for n <= 16; larger n takes caller-supplied S.
struct ESriReport {
    bool holds = true;
    bool exhaustive = false;
    std::int64_t worst_count = 0;
    std::int64_t sets_checked = 0;
};

inline ESriReport e_sri_holds(const Hypergraph3& g, int s, std::int64_t r, std::int64_t i,
                              const std::vector<std::vector<Vertex>>* s_candidates = nullptr) {
    const int n = g.vertex_count();
    if (s > n) throw std::invalid_argument("s exceeds vertex count");
    constexpr int kExhaustiveCutoff = 16;
    ESriReport rep;

    auto check_set = [&](const std::vector<Vertex>& s_set) {
        rep.sets_checked++;
        std::vector<char> in_s(static_cast<std::size_t>(n), 0);
        for (Vertex w : s_set) in_s[static_cast<std::size_t>(w)] = 1;
        for (Vertex v = 0; v < n; ++v) {
            if (in_s[static_cast<std::size_t>(v)]) continue;
            std::int64_t count = 0;
            for (std::int32_t idx : g.edges_through(v)) {
                const Edge3& e = g.edges()[static_cast<std::size_t>(idx)];
                Vertex y = -1, z = -1;
                for (Vertex w : e)
                    if (w != v) (y < 0 ? y : z) = w;
                if (in_s[static_cast<std::size_t>(y)] || in_s[static_cast<std::size_t>(z)]) continue;
                std::int64_t d_s = 0;
                for (Vertex w : g.thirds(y, z)) d_s += in_s[static_cast<std::size_t>(w)];
                if (d_s >= i) count++;
            }
            rep.worst_count = std::max(rep.worst_count, count);
            if (count > r) rep.holds = false;
        }
    };

    if (s_candidates) {
        rep.exhaustive = false;
        for (const auto& s_set : *s_candidates) {
            if (static_cast<int>(s_set.size()) != s) throw std::invalid_argument("candidate S has wrong size");
            check_set(s_set);
        }
        return rep;
    }
    if (n > kExhaustiveCutoff)
        throw std::invalid_argument("exhaustive E_{s,r,i} limited to n <= 16; supply S candidates");
    rep.exhaustive = true;
    std::vector<Vertex> current;
    std::function<void(int)> rec = [&](int next) {
        if (static_cast<int>(current.size()) == s) {
            check_set(current);
            return;
        }
        if (n - next < s - static_cast<int>(current.size())) return;
        for (Vertex v = next; v < n; ++v) {
            current.push_back(v);
            rec(v + 1);
            current.pop_back();
        }
    };
    rec(0);
    return rep;
}

/// Degree/codegree concentration census; observational columns only.
struct CensusReport {
    int n = 0;
    double p = 0.0;
    std::int64_t min_degree = 0, max_degree = 0;
    double mean_degree = 0.0;
    double lemma4_center = 0.0;  // p n^2 / 2
    double exact_mean = 0.0;     // p C(n-1,2)

    bool has_partition = false;
    std::int64_t crossing_min = 0, crossing_max = 0;
    double crossing_worst_rel_dev = 0.0;  // vs p |Va||Vb| of the two other parts

    std::int64_t max_codegree = 0;
    double lemma6_bound = 0.0;  // p n sqrt(ln n)/ln ln n
    bool max_codegree_within = false;

    bool has_s = false;
    std::int64_t s_size = 0;
    std::int64_t pairs_codegree_ge_3pn = 0;
    double lemma7_bound = 0.0;  // n^2 e^{-sqrt(ln n)}
    bool pairs_within = false;
};

inline CensusReport concentration_census(const Hypergraph3& g, const Partition3* pi, double p,
                                         const std::vector<Vertex>* s_set = nullptr) {
    const int n = g.vertex_count();
    CensusReport rep;
    rep.n = n;
    rep.p = p;
    const double dn = static_cast<double>(n);
    rep.lemma4_center = p * dn * dn / 2.0;
    rep.exact_mean = p * (dn - 1.0) * (dn - 2.0) / 2.0;

    std::int64_t total = 0;
    rep.min_degree = n > 0 ? g.edge_count() * 3 + 1 : 0;
    for (Vertex v = 0; v < n; ++v) {
        const auto d = static_cast<std::int64_t>(g.edges_through(v).size());
        total += d;
        rep.min_degree = std::min(rep.min_degree, d);
        rep.max_degree = std::max(rep.max_degree, d);
    }
    rep.mean_degree = n > 0 ? static_cast<double>(total) / dn : 0.0;

    if (pi) {
        rep.has_partition = true;
        rep.crossing_min = g.edge_count() + 1;
        for (Vertex v = 0; v < n; ++v) {
            const int part = pi->part(v);
            std::int64_t crossing = 0;
            for (std::int32_t idx : g.edges_through(v)) {
                const Edge3& e = g.edges()[static_cast<std::size_t>(idx)];
                int pa = 0, pb = 0;
                for (Vertex w : e)
                    if (w != v) (pa == 0 ? pa : pb) = pi->part(w);
                if (pa != part && pb != part && pa != pb) crossing++;
            }
            rep.crossing_min = std::min(rep.crossing_min, crossing);
            rep.crossing_max = std::max(rep.crossing_max, crossing);
            const auto sizes = pi->part_sizes();
            double expect = p;
            for (int k = 1; k <= 3; ++k)
                if (k != part) expect *= static_cast<double>(sizes[static_cast<std::size_t>(k - 1)]);
            if (expect > 0.0)
                rep.crossing_worst_rel_dev =
                    std::max(rep.crossing_worst_rel_dev, std::abs(static_cast<double>(crossing) - expect) / expect);
        }
        if (rep.crossing_min > g.edge_count()) rep.crossing_min = 0;
    }

    for (const Edge2& pair : g.covered_pairs())
        rep.max_codegree =
            std::max(rep.max_codegree, static_cast<std::int64_t>(g.thirds(pair[0], pair[1]).size()));
    if (n >= 3) {
        const double ln_n = std::log(dn);
        rep.lemma6_bound = p * dn * std::sqrt(ln_n) / std::log(ln_n);
        rep.lemma7_bound = dn * dn * std::exp(-std::sqrt(ln_n));
    }
    rep.max_codegree_within = static_cast<double>(rep.max_codegree) <= rep.lemma6_bound;

    if (s_set) {
        rep.has_s = true;
        rep.s_size = static_cast<std::int64_t>(s_set->size());
        const auto in_s = detail::membership(n, *s_set);
        const double threshold = 3.0 * p * dn;
        // Only covered pairs can reach a positive threshold; at p = 0 every
        // pair outside S trivially qualifies.
        if (threshold <= 0.0) {
            std::int64_t outside = 0;
            for (Vertex v = 0; v < n; ++v) outside += in_s[static_cast<std::size_t>(v)] ? 0 : 1;
            rep.pairs_codegree_ge_3pn = outside * (outside - 1) / 2;
        } else {
            for (const Edge2& pair : g.covered_pairs()) {
                if (in_s[static_cast<std::size_t>(pair[0])] || in_s[static_cast<std::size_t>(pair[1])]) continue;
                std::int64_t d_s = 0;
                for (Vertex w : g.thirds(pair[0], pair[1])) d_s += in_s[static_cast<std::size_t>(w)];
                if (static_cast<double>(d_s) >= threshold) rep.pairs_codegree_ge_3pn++;
            }
        }
        rep.pairs_within = static_cast<double>(rep.pairs_codegree_ge_3pn) <= rep.lemma7_bound;
    }
    return rep;
}

/// One audited inequality.
struct AuditLine {
    std::string lemma_id;
    double lhs = 0.0, rhs = 0.0;
    bool holds = false;
    bool preconditions_met = false;
    std::string note;
};

/// Every section-3 quantity and margin for one (G, H, pi) instance.
struct AnalysisReport {
    int n = 0;
    double p = 0.0;
    std::int64_t h_size = 0, h_pi = 0, hbar_pi = 0, g_pi = 0;
    std::int64_t h1 = 0, h2 = 0, h3 = 0;
    std::int64_t q_size = 0, j_size = 0, b_size = 0, h_prime = 0;
    std::int64_t s_size = 0, s1_size = 0, s2_size = 0;
    std::int64_t h1_split[3] = {0, 0, 0};
    std::int64_t f5hat = 0;
    std::int64_t t_g = 0;
    bool divided_regime = false;
    bool balanced = false;
    std::vector<AuditLine> lines;
};

inline AnalysisReport audit_propositions(const Hypergraph3& g, const Hypergraph3& h, const Partition3& pi,
                                         const Constants& k, double p, std::int64_t partition_budget = 50000000) {
    if (!h.is_subhypergraph_of(g)) throw std::invalid_argument("H must be a subhypergraph of G");
    if (auto copy = find_f5(h)) throw std::invalid_argument("audit requires an F5-free H");
    const int n = g.vertex_count();
    const double dn = static_cast<double>(n);
    const double ln_n = std::log(dn), sq = std::sqrt(ln_n), lln = std::log(ln_n);

    AnalysisReport rep;
    rep.n = n;
    rep.p = p;
    rep.balanced = pi.is_balanced();

    const PartitionSplit split = partition_split(g, h, pi);
    rep.h_size = h.edge_count();
    rep.h_pi = split.h_pi.edge_count();
    rep.hbar_pi = split.hbar_pi.edge_count();
    rep.g_pi = split.g_pi.edge_count();
    rep.h1 = split.h_i[0].edge_count();
    rep.h2 = split.h_i[1].edge_count();
    rep.h3 = split.h_i[2].edge_count();

    const BPiResult bp = b_pi(g, pi, p, h);
    rep.q_size = static_cast<std::int64_t>(bp.q_pairs.size());
    rep.b_size = static_cast<std::int64_t>(bp.b_edges.size());
    rep.h_prime = bp.h_prime.edge_count();

    const Graph2 j = shadow_j(h, pi);
    rep.j_size = j.edge_count();
    rep.f5hat = count_f5hat(g, h, pi);
    rep.t_g = t_of_g(g, PartitionMode::Exact, partition_budget).value;

    const double divide_threshold = k.delta * p * dn * dn * dn / ln_n;
    rep.divided_regime = static_cast<double>(rep.hbar_pi) <= divide_threshold;

    const SClasses classes_div = classify_s(g, h, pi, k, p, Regime::Divided);
    const SClasses classes_und = classify_s(g, h, pi, k, p, Regime::Undivided);
    const SClasses& active_classes = rep.divided_regime ? classes_div : classes_und;
    rep.s_size = static_cast<std::int64_t>(active_classes.s.size());
    rep.s1_size = static_cast<std::int64_t>(active_classes.s1.size());
    rep.s2_size = static_cast<std::int64_t>(active_classes.s2.size());

    // J' = J[S] union J[V1 \ S] for the active regime's S.
    const auto& v1 = pi.members(1);
    std::vector<char> in_s(static_cast<std::size_t>(n), 0);
    for (Vertex v : active_classes.s) in_s[static_cast<std::size_t>(v)] = 1;
    std::vector<Vertex> v1_minus_s;
    for (Vertex v : v1)
        if (!in_s[static_cast<std::size_t>(v)]) v1_minus_s.push_back(v);
    const Graph2 j_prime = j.induced(active_classes.s).union_with(j.induced(v1_minus_s));

    // H1 split by the active regime's classes.
    std::array<std::vector<Edge3>, 3> h1_sets;
    {
        std::vector<char> in_s1(static_cast<std::size_t>(n), 0);
        for (Vertex v : active_classes.s1) in_s1[static_cast<std::size_t>(v)] = 1;
        for (const Edge3& e : split.h_i[0].edges()) {
            int cnt_s = 0, cnt_v1_not_s = 0, cnt_s1 = 0;
            for (Vertex v : e) {
                if (pi.part(v) == 1) {
                    if (in_s[static_cast<std::size_t>(v)])
                        cnt_s++;
                    else
                        cnt_v1_not_s++;
                }
                cnt_s1 += in_s1[static_cast<std::size_t>(v)] ? 1 : 0;
            }
            if (cnt_s >= 2 || cnt_v1_not_s >= 2)
                h1_sets[0].push_back(e);
            else if (cnt_s1 == 1)
                h1_sets[1].push_back(e);
            else
                h1_sets[2].push_back(e);
        }
    }
    for (int i = 0; i < 3; ++i) rep.h1_split[i] = static_cast<std::int64_t>(h1_sets[static_cast<std::size_t>(i)].size());

    const double pn = p * dn;
    const std::int64_t h1_max = std::max({rep.h1, rep.h2, rep.h3});
    const bool sum_small = static_cast<double>(rep.h1 + rep.h2 + rep.h3) <= k.delta * p * dn * dn * dn;

    // Prop 12 condition (2): shadow of H1 disjoint from Q(pi).
    bool shadow_disjoint_q = true;
    {
        const Graph2 shadow_h1 = shadow(split.h_i[0]);
        for (const Edge2& q : bp.q_pairs)
            if (shadow_h1.contains(q[0], q[1])) shadow_disjoint_q = false;
    }

    auto add = [&](const std::string& id, double lhs, double rhs, bool holds, bool pre, const std::string& note = "") {
        rep.lines.push_back(AuditLine{id, lhs, rhs, holds, pre, note});
    };

    add("prop12", static_cast<double>(rep.hbar_pi), 3.0 * static_cast<double>(rep.h1),
        static_cast<double>(rep.hbar_pi) >= 3.0 * static_cast<double>(rep.h1), sum_small && shadow_disjoint_q,
        shadow_disjoint_q ? "" : "shadow(H1) meets Q(pi)");
    add("prop13", static_cast<double>(rep.t_g),
        static_cast<double>(rep.g_pi) + static_cast<double>(rep.q_size) * k.delta * dn * dn * p * p,
        static_cast<double>(rep.t_g) >=
            static_cast<double>(rep.g_pi) + static_cast<double>(rep.q_size) * k.delta * dn * dn * p * p,
        rep.balanced);

    // Claim 15: every J \ Q edge spans at least p^2 n^2 / 12 crossing (y,z).
    {
        std::unordered_set<std::uint64_t> q_keys;
        for (const Edge2& q : bp.q_pairs) q_keys.insert(detail::pair_key(q[0], q[1], n));
        std::int64_t min_count = -1;
        std::int64_t edges_checked = 0;
        for (const Edge2& xw : j.edges()) {
            if (q_keys.count(detail::pair_key(xw[0], xw[1], n))) continue;
            edges_checked++;
            const auto& witnesses = h.thirds(xw[0], xw[1]);
            std::int64_t count = 0;
            for (Vertex y : pi.members(2)) {
                for (Vertex z : pi.members(3)) {
                    if (!g.contains(xw[0], y, z) || !g.contains(xw[1], y, z)) continue;
                    bool has_witness = false;
                    for (Vertex v0 : witnesses)
                        if (v0 != y && v0 != z) {
                            has_witness = true;
                            break;
                        }
                    if (has_witness) count++;
                }
            }
            min_count = min_count < 0 ? count : std::min(min_count, count);
        }
        const double rhs = p * p * dn * dn / 12.0;
        add("claim15", static_cast<double>(std::max<std::int64_t>(min_count, 0)), rhs,
            min_count < 0 || static_cast<double>(min_count) >= rhs, edges_checked > 0,
            edges_checked > 0 ? "" : "no J \\ Q edges");
    }

    // Lemma 16 under the active J'.
    {
        const double dj = static_cast<double>(j_prime.max_degree());
        const double lhs = static_cast<double>(rep.hbar_pi);
        const double rhs30 = 30.0 * pn * static_cast<double>(j_prime.edge_count());
        add("lem16_30pnJ", lhs, rhs30, lhs >= rhs30, dj <= k.eps1 * dn);
        const double rhs20 = 20.0 * pn * static_cast<double>(j_prime.edge_count()) * sq / lln;
        add("lem16_20pnJ_sqrt", lhs, rhs20, lhs >= rhs20, dj <= k.eps1 * dn / sq);
    }

    // Divided-regime class lemmas (17-19) and primed analogues (20-22).
    add("lem17_S", static_cast<double>(classes_div.s.size()), k.eps3 * dn / sq,
        static_cast<double>(classes_div.s.size()) <= k.eps3 * dn / sq, rep.divided_regime);
    add("lem18_S1", static_cast<double>(rep.hbar_pi), 20.0 * pn * dn * static_cast<double>(classes_div.s1.size()),
        static_cast<double>(rep.hbar_pi) >= 20.0 * pn * dn * static_cast<double>(classes_div.s1.size()),
        rep.divided_regime);
    add("lem19_S2", static_cast<double>(rep.hbar_pi), pn * dn * static_cast<double>(classes_div.s2.size()) / 20.0,
        static_cast<double>(rep.hbar_pi) >= pn * dn * static_cast<double>(classes_div.s2.size()) / 20.0,
        rep.divided_regime);
    add("lem20_Sprime", static_cast<double>(classes_und.s.size()), k.eps3 * dn,
        static_cast<double>(classes_und.s.size()) <= k.eps3 * dn, !rep.divided_regime);
    add("lem21_Sprime1", static_cast<double>(rep.hbar_pi), 20.0 * pn * dn * static_cast<double>(classes_und.s1.size()),
        static_cast<double>(rep.hbar_pi) >= 20.0 * pn * dn * static_cast<double>(classes_und.s1.size()),
        !rep.divided_regime);
    add("lem22_Sprime2", static_cast<double>(rep.hbar_pi), pn * dn * static_cast<double>(classes_und.s2.size()) / 20.0,
        static_cast<double>(rep.hbar_pi) >= pn * dn * static_cast<double>(classes_und.s2.size()) / 20.0,
        !rep.divided_regime);

    // Proof-of-Theorem-1 chain (opening plus displays (1)-(4)).
    {
        const double codeg_bound = pn * sq / lln;
        const double lhs0 = static_cast<double>(rep.h_size);
        const double rhs0 = static_cast<double>(rep.h_pi) + 3.0 * static_cast<double>(rep.h1);
        add("chain_opening", lhs0, rhs0, lhs0 <= rhs0, h1_max == rep.h1, "H <= H_pi + 3 H1 under the H1-max WLOG");
        const double a = static_cast<double>(rep.h_pi) + 3.0 * static_cast<double>(rep.h1);
        const double b = static_cast<double>(rep.g_pi) + 3.0 * static_cast<double>(rep.b_size);
        add("chain1", a, b, a <= b, sum_small && shadow_disjoint_q);
        const double c = static_cast<double>(rep.g_pi) + 3.0 * static_cast<double>(rep.q_size) * codeg_bound;
        add("chain2", b, c, b <= c, true);
        const double d = static_cast<double>(rep.g_pi) + static_cast<double>(rep.q_size) * k.delta * p * p * dn * dn;
        add("chain3", c, d, c <= d, true, "needs p >= 60 sqrt(ln n)/(delta ln ln n n) scale");
        add("chain4", d, static_cast<double>(rep.t_g), d <= static_cast<double>(rep.t_g), rep.balanced);
    }

    // Case analysis of the H1 partition under the active regime.
    {
        const double lhs = static_cast<double>(rep.hbar_pi);
        const double factor1 = rep.divided_regime ? 20.0 : 9.0;
        add("case1_H1_1", lhs, factor1 * static_cast<double>(rep.h1_split[0]),
            lhs >= factor1 * static_cast<double>(rep.h1_split[0]), 3 * rep.h1_split[0] >= rep.h1);
        add("case2_H1_2", lhs, 10.0 * static_cast<double>(rep.h1_split[1]),
            lhs >= 10.0 * static_cast<double>(rep.h1_split[1]), 3 * rep.h1_split[1] >= rep.h1);
        add("case3_H1_3", lhs, 10.0 * static_cast<double>(rep.h1_split[2]),
            lhs >= 10.0 * static_cast<double>(rep.h1_split[2]), 3 * rep.h1_split[2] >= rep.h1);
    }

    add("regime_switch", static_cast<double>(rep.hbar_pi), divide_threshold, true, true,
        rep.divided_regime ? "divided: |Hbar_pi| <= delta p n^3/ln n" : "undivided");

    return rep;
}

}  // namespace f5lab

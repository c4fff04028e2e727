#pragma once

// Test-only oracles: independent brute-force implementations used to fix
// expected values. These deliberately share no code with the library paths
// they check.

#include <algorithm>
#include <array>
#include <cstdint>
#include <vector>

#include "f5lab/hypergraph.hpp"

namespace oracle {

using f5lab::Edge2;
using f5lab::Edge3;
using f5lab::Hypergraph3;
using f5lab::Partition3;
using f5lab::Vertex;

// Does the edge triple (in some labeling) form an F5: two edges sharing
// exactly a pair, the third covering the remaining two vertices plus a
// fifth, disjoint from the shared pair?
inline bool triple_is_f5(const Edge3& a, const Edge3& b, const Edge3& c) {
    const std::array<std::array<const Edge3*, 3>, 3> labelings = {{{&a, &b, &c}, {&a, &c, &b}, {&b, &c, &a}}};
    for (const auto& lab : labelings) {
        const Edge3 &e1 = *lab[0], &e2 = *lab[1], &base = *lab[2];
        std::vector<Vertex> shared;
        for (Vertex v : e1)
            if (v == e2[0] || v == e2[1] || v == e2[2]) shared.push_back(v);
        if (shared.size() != 2) continue;
        std::vector<Vertex> uni;
        for (const Edge3* e : {&e1, &e2, &base})
            for (Vertex v : *e) uni.push_back(v);
        std::sort(uni.begin(), uni.end());
        uni.erase(std::unique(uni.begin(), uni.end()), uni.end());
        if (uni.size() != 5) continue;
        bool base_hits_shared = false;
        for (Vertex v : base)
            if (v == shared[0] || v == shared[1]) base_hits_shared = true;
        if (!base_hits_shared) return true;
    }
    return false;
}

inline std::vector<std::array<int, 3>> f5_copies_as_index_triples(const Hypergraph3& h) {
    const auto& edges = h.edges();
    const int m = static_cast<int>(edges.size());
    std::vector<std::array<int, 3>> out;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            for (int k = j + 1; k < m; ++k)
                if (triple_is_f5(edges[static_cast<std::size_t>(i)], edges[static_cast<std::size_t>(j)],
                                 edges[static_cast<std::size_t>(k)]))
                    out.push_back({i, j, k});
    return out;
}

inline std::int64_t brute_count_f5(const Hypergraph3& h) {
    return static_cast<std::int64_t>(f5_copies_as_index_triples(h).size());
}

inline std::int64_t brute_count_k4minus(const Hypergraph3& h) {
    const int n = h.vertex_count();
    std::int64_t total = 0;
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b)
            for (Vertex c = b + 1; c < n; ++c)
                for (Vertex d = c + 1; d < n; ++d) {
                    int t = 0;
                    t += h.contains(a, b, c) ? 1 : 0;
                    t += h.contains(a, b, d) ? 1 : 0;
                    t += h.contains(a, c, d) ? 1 : 0;
                    t += h.contains(b, c, d) ? 1 : 0;
                    if (t >= 3) total += static_cast<std::int64_t>(t) * (t - 1) * (t - 2) / 6;
                }
    return total;
}

// Exhaustive maximum F5-free edge subset over all 2^m subsets (m <= ~22).
struct ExhaustiveMax {
    std::int64_t optimum = 0;
    std::vector<std::uint32_t> optimal_masks;
};

inline ExhaustiveMax exhaustive_max_f5_free(const Hypergraph3& h) {
    const int m = static_cast<int>(h.edge_count());
    const auto copies = f5_copies_as_index_triples(h);
    std::vector<std::uint32_t> copy_masks;
    copy_masks.reserve(copies.size());
    for (const auto& c : copies)
        copy_masks.push_back((1u << c[0]) | (1u << c[1]) | (1u << c[2]));
    ExhaustiveMax out;
    const std::uint32_t limit = m >= 32 ? 0 : (1u << m);
    for (std::uint32_t mask = 0; mask < limit; ++mask) {
        bool feasible = true;
        for (std::uint32_t cm : copy_masks)
            if ((mask & cm) == cm) {
                feasible = false;
                break;
            }
        if (!feasible) continue;
        const int size = __builtin_popcount(mask);
        if (size > out.optimum) {
            out.optimum = size;
            out.optimal_masks.clear();
        }
        if (size == out.optimum) out.optimal_masks.push_back(mask);
    }
    return out;
}

inline Hypergraph3 subset_from_mask(const Hypergraph3& h, std::uint32_t mask) {
    std::vector<Edge3> edges;
    for (int i = 0; i < static_cast<int>(h.edge_count()); ++i)
        if (mask & (1u << i)) edges.push_back(h.edges()[static_cast<std::size_t>(i)]);
    return Hypergraph3::build(h.vertex_count(), edges);
}

// Exhaustive t(G) over all 3^n assignments, no symmetry reduction.
inline std::int64_t exhaustive_t_of_g(const Hypergraph3& g) {
    const int n = g.vertex_count();
    std::vector<std::uint8_t> part(static_cast<std::size_t>(n), 1);
    std::int64_t best = 0;
    std::int64_t total = 1;
    for (int i = 0; i < n; ++i) total *= 3;
    for (std::int64_t code = 0; code < total; ++code) {
        std::int64_t x = code;
        for (int v = 0; v < n; ++v) {
            part[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(1 + x % 3);
            x /= 3;
        }
        std::int64_t crossing = 0;
        for (const Edge3& e : g.edges()) {
            const int a = part[static_cast<std::size_t>(e[0])], b = part[static_cast<std::size_t>(e[1])],
                      c = part[static_cast<std::size_t>(e[2])];
            if (a != b && b != c && a != c) crossing++;
        }
        best = std::max(best, crossing);
    }
    return best;
}

inline std::int64_t max_product_composition(int n) {
    std::int64_t best = 0;
    for (int a = 0; a <= n; ++a)
        for (int b = 0; a + b <= n; ++b) {
            const int c = n - a - b;
            best = std::max(best, static_cast<std::int64_t>(a) * b * c);
        }
    return best;
}

inline std::int64_t brute_count_f5hat(const Hypergraph3& g, const Hypergraph3& h, const Partition3& pi) {
    std::int64_t count = 0;
    const auto& v1 = pi.members(1);
    for (std::size_t i = 0; i < v1.size(); ++i)
        for (std::size_t j = i + 1; j < v1.size(); ++j) {
            const Vertex w1 = v1[i], w2 = v1[j];
            for (Vertex y : pi.members(2))
                for (Vertex z : pi.members(3)) {
                    if (!g.contains(w1, y, z) || !g.contains(w2, y, z)) continue;
                    bool witness = false;
                    for (const Edge3& e : h.edges()) {
                        const bool has_w1 = e[0] == w1 || e[1] == w1 || e[2] == w1;
                        const bool has_w2 = e[0] == w2 || e[1] == w2 || e[2] == w2;
                        const bool has_y = e[0] == y || e[1] == y || e[2] == y;
                        const bool has_z = e[0] == z || e[1] == z || e[2] == z;
                        if (has_w1 && has_w2 && !has_y && !has_z) {
                            witness = true;
                            break;
                        }
                    }
                    if (witness) count++;
                }
        }
    return count;
}

// Exact g over integers and a dyadic p, in long double (all factors and the
// product stay far below 2^64, so rounding is the only error source).
inline long double exact_binom(int a, int b) {
    if (b < 0 || b > a) return 0.0L;
    long double r = 1.0L;
    for (int i = 0; i < b; ++i) r = r * static_cast<long double>(a - i) / static_cast<long double>(i + 1);
    return r;
}

inline long double exact_g(int n, long double p, int s, int r, int i) {
    long double per = p * exact_binom(s, i);
    for (int k = 0; k < i; ++k) per *= p;
    long double factor = 1.0L;
    for (int k = 0; k < r; ++k) factor *= per;
    return static_cast<long double>(n) * exact_binom(n, s) * exact_binom(n * n, r) * factor;
}

}  // namespace oracle

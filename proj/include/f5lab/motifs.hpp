#pragma once

// Census of the forbidden and auxiliary patterns: F5 (the generalized
// triangle {123,124,345}), K4-minus (3 edges on 4 vertices), and the
// crossing 4-set pattern built from a host/subhypergraph pair.

#include <cstdint>
#include <optional>
#include <unordered_set>

#include "hypergraph.hpp"

namespace f5lab {

/// One unlabeled F5 copy: pair_edge1 and pair_edge2 share exactly the two
/// vertices of shared_pair; base_edge covers the two remaining vertices plus
/// a fifth, and avoids the shared pair. Union has exactly 5 vertices.
struct F5Copy {
    Edge3 pair_edge1, pair_edge2, base_edge;
    Edge2 shared_pair;
};

namespace detail {

// Every F5 copy decomposes uniquely: exactly one of its three edge pairs
// shares two vertices, so iterating (shared pair {a,b}, unordered {y,z} from
// the pair's codegree neighborhood, base edge {y,z,w} with w outside {a,b})
// visits each copy exactly once.
template <typename Fn>
bool for_each_f5(const Hypergraph3& h, Fn&& fn) {
    for (const Edge2& ab : h.covered_pairs()) {
        const auto& nbrs = h.thirds(ab[0], ab[1]);
        if (nbrs.size() < 2) continue;
        for (std::size_t i = 0; i < nbrs.size(); ++i)
            for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
                const Vertex y = nbrs[i], z = nbrs[j];
                for (Vertex w : h.thirds(y, z)) {
                    if (w == ab[0] || w == ab[1]) continue;
                    F5Copy copy{make_edge3(ab[0], ab[1], y), make_edge3(ab[0], ab[1], z), make_edge3(y, z, w), ab};
                    if (!fn(copy)) return false;
                }
            }
    }
    return true;
}

}  // namespace detail

/// Number of unlabeled F5 copies; optionally collects them (deterministic
/// order, capped when `cap` >= 0).
inline std::int64_t count_f5(const Hypergraph3& h, std::vector<F5Copy>* out = nullptr, std::int64_t cap = -1) {
    std::int64_t count = 0;
    detail::for_each_f5(h, [&](const F5Copy& copy) {
        ++count;
        if (out && (cap < 0 || static_cast<std::int64_t>(out->size()) < cap)) out->push_back(copy);
        return true;
    });
    return count;
}

/// First F5 copy in canonical order, or nullopt when H is F5-free.
inline std::optional<F5Copy> find_f5(const Hypergraph3& h) {
    std::optional<F5Copy> found;
    detail::for_each_f5(h, [&](const F5Copy& copy) {
        found = copy;
        return false;
    });
    return found;
}

inline bool is_f5_free(const Hypergraph3& h) { return !find_f5(h).has_value(); }

/// K4-minus census: over 4-sets spanning t >= 3 edges, sums C(t,3) (the
/// number of 3-edge patterns inside the 4-set).
inline std::int64_t count_k4minus(const Hypergraph3& h) {
    const int n = h.vertex_count();
    if (n < 4) return 0;
    const auto nn = static_cast<std::uint64_t>(n);
    std::unordered_set<std::uint64_t> seen;
    std::int64_t total = 0;
    for (const Edge3& e : h.edges()) {
        for (Vertex d = 0; d < n; ++d) {
            if (d == e[0] || d == e[1] || d == e[2]) continue;
            std::array<Vertex, 4> q{e[0], e[1], e[2], d};
            std::sort(q.begin(), q.end());
            const std::uint64_t key = ((static_cast<std::uint64_t>(q[0]) * nn + q[1]) * nn + q[2]) * nn + q[3];
            if (!seen.insert(key).second) continue;
            int t = 0;
            t += h.contains(q[0], q[1], q[2]) ? 1 : 0;
            t += h.contains(q[0], q[1], q[3]) ? 1 : 0;
            t += h.contains(q[0], q[2], q[3]) ? 1 : 0;
            t += h.contains(q[1], q[2], q[3]) ? 1 : 0;
            if (t >= 3) total += static_cast<std::int64_t>(t) * (t - 1) * (t - 2) / 6;
        }
    }
    return total;
}

/// A 4-set {w1,w2,y,z} with w1,w2 in V1, y in V2, z in V3, both w_i y z
/// crossing edges of G, plus a witness edge of H containing w1,w2 inside V1
/// and avoiding y,z.
struct F5HatCopy {
    Vertex w1, w2, y, z;
    Edge3 witness;
};

/// Counts the 4-sets above, each once regardless of witness multiplicity;
/// enumeration yields one (first-found) witness per 4-set.
inline std::int64_t count_f5hat(const Hypergraph3& g, const Hypergraph3& h, const Partition3& pi,
                                std::vector<F5HatCopy>* out = nullptr) {
    if (!h.is_subhypergraph_of(g)) throw std::invalid_argument("H must be a subhypergraph of G");
    const int n = g.vertex_count();
    if (pi.size() != n) throw std::invalid_argument("partition size mismatch");
    const auto nn = static_cast<std::uint64_t>(n);
    std::unordered_set<std::uint64_t> seen;
    std::int64_t count = 0;
    for (const Edge3& e : h.edges()) {
        std::array<Vertex, 3> in_v1{};
        int k = 0;
        for (Vertex v : e)
            if (pi.part(v) == 1) in_v1[static_cast<std::size_t>(k++)] = v;
        if (k < 2) continue;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) {
                const Vertex w1 = in_v1[static_cast<std::size_t>(i)], w2 = in_v1[static_cast<std::size_t>(j)];
                // (y,z) from the common V2xV3 link of w1,w2 in G, avoiding e.
                for (std::int32_t idx : g.edges_through(w1)) {
                    const Edge3& ge = g.edges()[static_cast<std::size_t>(idx)];
                    Vertex a = -1, b = -1;
                    for (Vertex v : ge)
                        if (v != w1) (a < 0 ? a : b) = v;
                    Vertex y, z;
                    if (pi.part(a) == 2 && pi.part(b) == 3) {
                        y = a; z = b;
                    } else if (pi.part(a) == 3 && pi.part(b) == 2) {
                        y = b; z = a;
                    } else {
                        continue;
                    }
                    if (y == e[0] || y == e[1] || y == e[2] || z == e[0] || z == e[1] || z == e[2]) continue;
                    if (!g.contains(w2, y, z)) continue;
                    const std::uint64_t key =
                        ((static_cast<std::uint64_t>(std::min(w1, w2)) * nn + std::max(w1, w2)) * nn + y) * nn + z;
                    if (!seen.insert(key).second) continue;
                    ++count;
                    if (out) out->push_back(F5HatCopy{std::min(w1, w2), std::max(w1, w2), y, z, e});
                }
            }
    }
    return count;
}

}  // namespace f5lab

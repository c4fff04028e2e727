#pragma once

// Core 3-uniform hypergraph, 3-partition, and plain graph types, with the
// local queries (links, codegrees, crossing splits) everything else is
// built from. Vertices are 0-based integers in [0, n).

#include <algorithm>
#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace f5lab {

using Vertex = std::int32_t;
using Edge3 = std::array<Vertex, 3>;  // ascending
using Edge2 = std::array<Vertex, 2>;  // ascending

inline Edge3 make_edge3(Vertex a, Vertex b, Vertex c) {
    Edge3 e{a, b, c};
    std::sort(e.begin(), e.end());
    if (e[0] == e[1] || e[1] == e[2])
        throw std::invalid_argument("edge vertices must be distinct");
    return e;
}

inline Edge2 make_edge2(Vertex a, Vertex b) {
    if (a == b) throw std::invalid_argument("pair vertices must be distinct");
    return a < b ? Edge2{a, b} : Edge2{b, a};
}

namespace detail {
// Packed keys; fine for desk-scale n (< 2^20 vertices).
inline std::uint64_t pair_key(Vertex a, Vertex b, Vertex n) {
    return static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(b);
}
inline std::uint64_t triple_key(const Edge3& e, Vertex n) {
    const auto nn = static_cast<std::uint64_t>(n);
    return (static_cast<std::uint64_t>(e[0]) * nn + e[1]) * nn + e[2];
}
}  // namespace detail

/// 3-uniform hypergraph on [0, n): canonical sorted edge list plus pair and
/// vertex indices, immutable after construction.
class Hypergraph3 {
public:
    Hypergraph3() = default;
    explicit Hypergraph3(int n) : n_(n) {
        if (n < 0) throw std::invalid_argument("negative vertex count");
        vertex_edges_.resize(static_cast<std::size_t>(n));
    }

    static Hypergraph3 build(int n, const std::vector<Edge3>& triples) {
        Hypergraph3 h(n);
        std::vector<Edge3> canon;
        canon.reserve(triples.size());
        for (const auto& t : triples) {
            Edge3 e = make_edge3(t[0], t[1], t[2]);
            if (e[0] < 0 || e[2] >= n) throw std::invalid_argument("vertex out of range");
            canon.push_back(e);
        }
        std::sort(canon.begin(), canon.end());
        canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
        h.edges_ = std::move(canon);
        h.index();
        return h;
    }

    int vertex_count() const { return n_; }
    std::int64_t edge_count() const { return static_cast<std::int64_t>(edges_.size()); }
    const std::vector<Edge3>& edges() const { return edges_; }

    bool contains(Vertex a, Vertex b, Vertex c) const {
        Edge3 e = make_edge3(a, b, c);
        if (e[0] < 0 || e[2] >= n_) return false;
        return edge_keys_.count(detail::triple_key(e, n_)) > 0;
    }
    bool contains(const Edge3& e) const { return contains(e[0], e[1], e[2]); }

    /// Vertices z with {u,v,z} an edge (the codegree neighborhood over [n)),
    /// ascending; empty if the pair is covered by no edge.
    const std::vector<Vertex>& thirds(Vertex u, Vertex v) const {
        static const std::vector<Vertex> kEmpty;
        Edge2 p = make_edge2(u, v);
        auto it = pair_thirds_.find(detail::pair_key(p[0], p[1], n_));
        return it == pair_thirds_.end() ? kEmpty : it->second;
    }

    /// Covered pairs in ascending order, for deterministic pair iteration.
    const std::vector<Edge2>& covered_pairs() const { return pairs_; }

    /// Indices into edges() of the edges through v.
    const std::vector<std::int32_t>& edges_through(Vertex v) const {
        return vertex_edges_.at(static_cast<std::size_t>(v));
    }

    bool is_subhypergraph_of(const Hypergraph3& other) const {
        if (n_ != other.n_) return false;
        for (const auto& e : edges_)
            if (!other.contains(e)) return false;
        return true;
    }

    // Text format: "n m" then m lines "a b c" with 0 <= a < b < c < n.
    void write(std::ostream& os) const {
        os << n_ << ' ' << edges_.size() << '\n';
        for (const auto& e : edges_) os << e[0] << ' ' << e[1] << ' ' << e[2] << '\n';
    }
    static Hypergraph3 read(std::istream& is) {
        int n = 0;
        std::int64_t m = 0;
        if (!(is >> n >> m)) throw std::invalid_argument("bad hypergraph header");
        std::vector<Edge3> triples;
        triples.reserve(static_cast<std::size_t>(m));
        for (std::int64_t k = 0; k < m; ++k) {
            Vertex a, b, c;
            if (!(is >> a >> b >> c)) throw std::invalid_argument("truncated hypergraph edge list");
            triples.push_back(make_edge3(a, b, c));
        }
        return build(n, triples);
    }
    std::string to_string() const {
        std::ostringstream os;
        write(os);
        return os.str();
    }

private:
    void index() {
        vertex_edges_.assign(static_cast<std::size_t>(n_), {});
        edge_keys_.reserve(edges_.size() * 2);
        for (std::size_t idx = 0; idx < edges_.size(); ++idx) {
            const Edge3& e = edges_[idx];
            edge_keys_.insert(detail::triple_key(e, n_));
            for (Vertex v : e) vertex_edges_[static_cast<std::size_t>(v)].push_back(static_cast<std::int32_t>(idx));
            pair_thirds_[detail::pair_key(e[0], e[1], n_)].push_back(e[2]);
            pair_thirds_[detail::pair_key(e[0], e[2], n_)].push_back(e[1]);
            pair_thirds_[detail::pair_key(e[1], e[2], n_)].push_back(e[0]);
        }
        pairs_.reserve(pair_thirds_.size());
        for (auto& [key, zs] : pair_thirds_) {
            std::sort(zs.begin(), zs.end());
            const auto nn = static_cast<std::uint64_t>(n_);
            pairs_.push_back(Edge2{static_cast<Vertex>(key / nn), static_cast<Vertex>(key % nn)});
        }
        std::sort(pairs_.begin(), pairs_.end());
    }

    int n_ = 0;
    std::vector<Edge3> edges_;
    std::vector<Edge2> pairs_;
    std::unordered_set<std::uint64_t> edge_keys_;
    std::unordered_map<std::uint64_t, std::vector<Vertex>> pair_thirds_;
    std::vector<std::vector<std::int32_t>> vertex_edges_;
};

/// Assignment of each vertex to a part in {1,2,3}.
class Partition3 {
public:
    Partition3() = default;
    explicit Partition3(std::vector<std::uint8_t> parts) : parts_(std::move(parts)) {
        for (auto p : parts_)
            if (p < 1 || p > 3) throw std::invalid_argument("part index must be in {1,2,3}");
        index();
    }

    /// Contiguous thirds with the S(n) part sizes floor(n/3), floor((n+1)/3), floor((n+2)/3).
    static Partition3 contiguous_thirds(int n) {
        std::vector<std::uint8_t> parts(static_cast<std::size_t>(n));
        const int a = n / 3, b = (n + 1) / 3;
        for (int v = 0; v < n; ++v) parts[static_cast<std::size_t>(v)] = v < a ? 1 : (v < a + b ? 2 : 3);
        return Partition3(std::move(parts));
    }

    int size() const { return static_cast<int>(parts_.size()); }
    int part(Vertex v) const { return parts_.at(static_cast<std::size_t>(v)); }
    const std::vector<Vertex>& members(int part) const { return members_.at(static_cast<std::size_t>(part - 1)); }
    std::array<std::int64_t, 3> part_sizes() const {
        return {static_cast<std::int64_t>(members_[0].size()), static_cast<std::int64_t>(members_[1].size()),
                static_cast<std::int64_t>(members_[2].size())};
    }

    /// Swap part labels so the partition maps a->1, b->2, c->3.
    Partition3 relabeled(int a, int b, int c) const {
        std::array<std::uint8_t, 4> map{};
        map[static_cast<std::size_t>(a)] = 1;
        map[static_cast<std::size_t>(b)] = 2;
        map[static_cast<std::size_t>(c)] = 3;
        std::vector<std::uint8_t> parts(parts_.size());
        for (std::size_t v = 0; v < parts_.size(); ++v) parts[v] = map[parts_[v]];
        return Partition3(std::move(parts));
    }

    /// Every part size within (1 +- 1e-10) n/3, the inequality taken literally.
    bool is_balanced() const {
        const double third = static_cast<double>(parts_.size()) / 3.0;
        const double lo = (1.0 - 1e-10) * third, hi = (1.0 + 1e-10) * third;
        for (const auto& m : members_) {
            const double s = static_cast<double>(m.size());
            if (s < lo || s > hi) return false;
        }
        return true;
    }

    bool rainbow(const Edge3& e) const {
        const int a = part(e[0]), b = part(e[1]), c = part(e[2]);
        return a != b && b != c && a != c;
    }

    // Serializes as n space-separated part indices in {1,2,3}.
    void write(std::ostream& os) const {
        for (std::size_t v = 0; v < parts_.size(); ++v) os << (v ? " " : "") << static_cast<int>(parts_[v]);
        os << '\n';
    }
    static Partition3 read(std::istream& is, int n) {
        std::vector<std::uint8_t> parts;
        parts.reserve(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v) {
            int p;
            if (!(is >> p)) throw std::invalid_argument("truncated partition");
            parts.push_back(static_cast<std::uint8_t>(p));
        }
        return Partition3(std::move(parts));
    }

private:
    void index() {
        for (auto& m : members_) m.clear();
        for (std::size_t v = 0; v < parts_.size(); ++v)
            members_[static_cast<std::size_t>(parts_[v] - 1)].push_back(static_cast<Vertex>(v));
    }
    std::vector<std::uint8_t> parts_;
    std::array<std::vector<Vertex>, 3> members_;
};

/// Simple graph on [0, n); holds shadow graphs, link graphs, J and J'.
class Graph2 {
public:
    Graph2() = default;
    explicit Graph2(int n) : n_(n) {
        if (n < 0) throw std::invalid_argument("negative vertex count");
        adj_.resize(static_cast<std::size_t>(n));
    }

    static Graph2 build(int n, const std::vector<Edge2>& pairs) {
        Graph2 g(n);
        std::vector<Edge2> canon;
        canon.reserve(pairs.size());
        for (const auto& p : pairs) {
            Edge2 e = make_edge2(p[0], p[1]);
            if (e[0] < 0 || e[1] >= n) throw std::invalid_argument("vertex out of range");
            canon.push_back(e);
        }
        std::sort(canon.begin(), canon.end());
        canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
        g.edges_ = std::move(canon);
        for (const auto& e : g.edges_) {
            g.keys_.insert(detail::pair_key(e[0], e[1], n));
            g.adj_[static_cast<std::size_t>(e[0])].push_back(e[1]);
            g.adj_[static_cast<std::size_t>(e[1])].push_back(e[0]);
        }
        for (auto& a : g.adj_) std::sort(a.begin(), a.end());
        return g;
    }

    int vertex_count() const { return n_; }
    std::int64_t edge_count() const { return static_cast<std::int64_t>(edges_.size()); }
    const std::vector<Edge2>& edges() const { return edges_; }
    bool contains(Vertex u, Vertex v) const {
        if (u == v) return false;
        Edge2 e = make_edge2(u, v);
        if (e[0] < 0 || e[1] >= n_) return false;
        return keys_.count(detail::pair_key(e[0], e[1], n_)) > 0;
    }
    const std::vector<Vertex>& neighbors(Vertex v) const { return adj_.at(static_cast<std::size_t>(v)); }
    std::int64_t degree(Vertex v) const { return static_cast<std::int64_t>(neighbors(v).size()); }
    std::int64_t max_degree() const {
        std::int64_t d = 0;
        for (const auto& a : adj_) d = std::max<std::int64_t>(d, static_cast<std::int64_t>(a.size()));
        return d;
    }

    /// Induced subgraph on `keep`, preserving vertex labels.
    Graph2 induced(const std::vector<Vertex>& keep) const {
        std::vector<char> in(static_cast<std::size_t>(n_), 0);
        for (Vertex v : keep) in[static_cast<std::size_t>(v)] = 1;
        std::vector<Edge2> sub;
        for (const auto& e : edges_)
            if (in[static_cast<std::size_t>(e[0])] && in[static_cast<std::size_t>(e[1])]) sub.push_back(e);
        return build(n_, sub);
    }

    Graph2 union_with(const Graph2& other) const {
        if (n_ != other.n_) throw std::invalid_argument("vertex count mismatch");
        std::vector<Edge2> all = edges_;
        all.insert(all.end(), other.edges_.begin(), other.edges_.end());
        return build(n_, all);
    }

private:
    int n_ = 0;
    std::vector<Edge2> edges_;
    std::unordered_set<std::uint64_t> keys_;
    std::vector<std::vector<Vertex>> adj_;
};

/// Complete tripartite 3-uniform hypergraph with the given part sizes
/// (contiguous vertex ranges); every edge takes one vertex per part.
inline std::pair<Hypergraph3, Partition3> complete_tripartite(const std::array<int, 3>& sizes) {
    for (int s : sizes)
        if (s < 0) throw std::invalid_argument("negative part size");
    const int n = sizes[0] + sizes[1] + sizes[2];
    Partition3 pi = [&] {
        std::vector<std::uint8_t> parts(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v) parts[static_cast<std::size_t>(v)] = v < sizes[0] ? 1 : (v < sizes[0] + sizes[1] ? 2 : 3);
        return Partition3(std::move(parts));
    }();
    std::vector<Edge3> triples;
    triples.reserve(static_cast<std::size_t>(sizes[0]) * sizes[1] * sizes[2]);
    for (Vertex a : pi.members(1))
        for (Vertex b : pi.members(2))
            for (Vertex c : pi.members(3)) triples.push_back(make_edge3(a, b, c));
    return {Hypergraph3::build(n, triples), std::move(pi)};
}

/// S(n): the balanced complete tripartite host, s(n) = floor(n/3) floor((n+1)/3) floor((n+2)/3) edges.
inline std::pair<Hypergraph3, Partition3> balanced_tripartite(int n) {
    return complete_tripartite({n / 3, (n + 1) / 3, (n + 2) / 3});
}

inline std::int64_t s_formula(int n) {
    return static_cast<std::int64_t>(n / 3) * ((n + 1) / 3) * ((n + 2) / 3);
}

/// Shadow graph: xy is an edge iff some z has xyz in H.
inline Graph2 shadow(const Hypergraph3& h) {
    return Graph2::build(h.vertex_count(), h.covered_pairs());
}

namespace detail {
inline std::vector<char> membership(int n, const std::vector<Vertex>& set) {
    std::vector<char> in(static_cast<std::size_t>(n), 0);
    for (Vertex v : set) {
        if (v < 0 || v >= n) throw std::invalid_argument("set vertex out of range");
        in[static_cast<std::size_t>(v)] = 1;
    }
    return in;
}
}  // namespace detail

/// Link graph N^H_{S,T}(v): unordered pairs {y,z} with y in S, z in T and vyz an edge.
inline Graph2 link_graph(const Hypergraph3& h, Vertex v, const std::vector<Vertex>& s_set,
                         const std::vector<Vertex>& t_set) {
    const auto in_s = detail::membership(h.vertex_count(), s_set);
    const auto in_t = detail::membership(h.vertex_count(), t_set);
    std::vector<Edge2> pairs;
    for (std::int32_t idx : h.edges_through(v)) {
        const Edge3& e = h.edges()[static_cast<std::size_t>(idx)];
        Vertex a = -1, b = -1;
        for (Vertex w : e)
            if (w != v) (a < 0 ? a : b) = w;
        const bool sa = in_s[static_cast<std::size_t>(a)], ta = in_t[static_cast<std::size_t>(a)];
        const bool sb = in_s[static_cast<std::size_t>(b)], tb = in_t[static_cast<std::size_t>(b)];
        if ((sa && tb) || (sb && ta)) pairs.push_back(make_edge2(a, b));
    }
    return Graph2::build(h.vertex_count(), pairs);
}

inline std::int64_t link_degree(const Hypergraph3& h, Vertex v, const std::vector<Vertex>& s_set,
                                const std::vector<Vertex>& t_set) {
    return link_graph(h, v, s_set, t_set).edge_count();
}

/// Codegree neighborhood N_S(u,v) and its size d_S(u,v).
inline std::pair<std::vector<Vertex>, std::int64_t> codegree(const Hypergraph3& h, Vertex u, Vertex v,
                                                             const std::vector<Vertex>& s_set) {
    if (u == v) throw std::invalid_argument("codegree requires distinct vertices");
    const auto in_s = detail::membership(h.vertex_count(), s_set);
    std::vector<Vertex> out;
    for (Vertex z : h.thirds(u, v))
        if (in_s[static_cast<std::size_t>(z)]) out.push_back(z);
    return {out, static_cast<std::int64_t>(out.size())};
}

inline std::vector<Vertex> all_vertices(int n) {
    std::vector<Vertex> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i;
    return v;
}

/// Common neighborhood L^H_{S,T}(u,v): intersection of the two link graphs.
inline Graph2 common_link(const Hypergraph3& h, Vertex u, Vertex v, const std::vector<Vertex>& s_set,
                          const std::vector<Vertex>& t_set) {
    if (u == v) throw std::invalid_argument("common_link requires distinct vertices");
    const Graph2 lu = link_graph(h, u, s_set, t_set);
    const Graph2 lv = link_graph(h, v, s_set, t_set);
    std::vector<Edge2> pairs;
    for (const auto& e : lu.edges())
        if (lv.contains(e[0], e[1])) pairs.push_back(e);
    return Graph2::build(h.vertex_count(), pairs);
}

/// The crossing/non-crossing split of H inside host G under pi.
struct PartitionSplit {
    Hypergraph3 h_pi;     // H ∩ K_pi
    Hypergraph3 hbar_pi;  // (G ∩ K_pi) \ H_pi, the missing crossing edges
    Hypergraph3 g_pi;     // G ∩ K_pi
    std::array<Hypergraph3, 3> h_i;  // edges of H with >= 2 vertices in part i
};

inline PartitionSplit partition_split(const Hypergraph3& g, const Hypergraph3& h, const Partition3& pi) {
    if (!h.is_subhypergraph_of(g)) throw std::invalid_argument("H must be a subhypergraph of G");
    if (pi.size() != g.vertex_count()) throw std::invalid_argument("partition size mismatch");
    const int n = g.vertex_count();
    std::vector<Edge3> h_pi, g_pi, hbar, hi[3];
    for (const auto& e : g.edges()) {
        if (!pi.rainbow(e)) continue;
        g_pi.push_back(e);
        if (h.contains(e))
            h_pi.push_back(e);
        else
            hbar.push_back(e);
    }
    for (const auto& e : h.edges()) {
        if (pi.rainbow(e)) continue;
        std::array<int, 4> cnt{};
        for (Vertex v : e) cnt[static_cast<std::size_t>(pi.part(v))]++;
        for (int part = 1; part <= 3; ++part)
            if (cnt[static_cast<std::size_t>(part)] >= 2) hi[part - 1].push_back(e);
    }
    PartitionSplit out;
    out.h_pi = Hypergraph3::build(n, h_pi);
    out.hbar_pi = Hypergraph3::build(n, hbar);
    out.g_pi = Hypergraph3::build(n, g_pi);
    for (int i = 0; i < 3; ++i) out.h_i[static_cast<std::size_t>(i)] = Hypergraph3::build(n, hi[i]);
    return out;
}

/// Q(pi): pairs {x,y} inside V1 whose common V2xV3 link in G is strictly
/// below 0.8 p^2 n^2 / 9.
inline std::vector<Edge2> q_set(const Hypergraph3& g, const Partition3& pi, double p) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("p must be in [0,1]");
    const int n = g.vertex_count();
    const double threshold = 0.8 * p * p * static_cast<double>(n) * static_cast<double>(n) / 9.0;
    const auto& v1 = pi.members(1);
    // Per-vertex crossing link pair sets, then pairwise intersection sizes.
    std::vector<std::unordered_set<std::uint64_t>> link(v1.size());
    std::vector<char> role(static_cast<std::size_t>(n), 0);
    for (Vertex v : pi.members(2)) role[static_cast<std::size_t>(v)] = 2;
    for (Vertex v : pi.members(3)) role[static_cast<std::size_t>(v)] = 3;
    for (std::size_t i = 0; i < v1.size(); ++i) {
        const Vertex x = v1[i];
        for (std::int32_t idx : g.edges_through(x)) {
            const Edge3& e = g.edges()[static_cast<std::size_t>(idx)];
            Vertex a = -1, b = -1;
            for (Vertex w : e)
                if (w != x) (a < 0 ? a : b) = w;
            const char ra = role[static_cast<std::size_t>(a)], rb = role[static_cast<std::size_t>(b)];
            if ((ra == 2 && rb == 3) || (ra == 3 && rb == 2))
                link[i].insert(detail::pair_key(std::min(a, b), std::max(a, b), n));
        }
    }
    std::vector<Edge2> q;
    for (std::size_t i = 0; i < v1.size(); ++i)
        for (std::size_t j = i + 1; j < v1.size(); ++j) {
            const auto& small = link[i].size() <= link[j].size() ? link[i] : link[j];
            const auto& big = link[i].size() <= link[j].size() ? link[j] : link[i];
            std::int64_t common = 0;
            for (auto key : small) common += big.count(key) ? 1 : 0;
            if (static_cast<double>(common) < threshold) q.push_back(make_edge2(v1[i], v1[j]));
        }
    std::sort(q.begin(), q.end());
    return q;
}

}  // namespace f5lab

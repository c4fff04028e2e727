#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <sstream>

#include "f5lab/hypergraph.hpp"
#include "f5lab/random_model.hpp"

using namespace f5lab;

namespace {
// F5 in 0-based labels: paper edges {123,124,345} shift to {012,013,234}.
Hypergraph3 make_f5() { return Hypergraph3::build(5, {{0, 1, 2}, {0, 1, 3}, {2, 3, 4}}); }
}  // namespace

TEST_CASE("build canonicalizes and validates", "[hypergraph]") {
    const auto f5 = make_f5();
    REQUIRE(f5.edge_count() == 3);
    REQUIRE(f5.contains(2, 1, 0));
    REQUIRE_FALSE(f5.contains(0, 1, 4));

    REQUIRE(Hypergraph3::build(4, {}).edge_count() == 0);

    const auto dup = Hypergraph3::build(4, {{0, 1, 2}, {2, 1, 0}});
    REQUIRE(dup.edge_count() == 1);
    REQUIRE(dup.edges()[0] == Edge3{0, 1, 2});

    REQUIRE_THROWS_AS(Hypergraph3::build(4, {{0, 1, 4}}), std::invalid_argument);
    REQUIRE_THROWS_AS(Hypergraph3::build(4, {{0, 1, 1}}), std::invalid_argument);
    REQUIRE_THROWS_AS(Hypergraph3::build(4, {{-1, 1, 2}}), std::invalid_argument);
}

TEST_CASE("complete tripartite hosts and s(n)", "[hypergraph]") {
    REQUIRE(complete_tripartite({1, 2, 2}).first.edge_count() == 4);
    REQUIRE(complete_tripartite({2, 2, 2}).first.edge_count() == 8);
    REQUIRE(complete_tripartite({0, 3, 4}).first.edge_count() == 0);

    for (int n = 3; n <= 30; ++n) {
        auto [s, pi] = balanced_tripartite(n);
        REQUIRE(s.edge_count() == s_formula(n));
        for (const Edge3& e : s.edges()) REQUIRE(pi.rainbow(e));
    }
}

TEST_CASE("shadow graph", "[hypergraph]") {
    const auto single = Hypergraph3::build(3, {{0, 1, 2}});
    REQUIRE(shadow(single).edge_count() == 3);

    REQUIRE(shadow(Hypergraph3::build(4, {})).edge_count() == 0);

    const auto sh = shadow(make_f5());
    const std::set<Edge2> expected{{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}, {2, 3}, {2, 4}, {3, 4}};
    REQUIRE(sh.edge_count() == static_cast<std::int64_t>(expected.size()));
    for (const Edge2& e : expected) REQUIRE(sh.contains(e[0], e[1]));
}

TEST_CASE("link graph", "[hypergraph]") {
    const auto f5 = make_f5();
    const auto link = link_graph(f5, 0, {1}, {2, 3});
    REQUIRE(link.edge_count() == 2);
    REQUIRE(link.contains(1, 2));
    REQUIRE(link.contains(1, 3));

    REQUIRE(link_graph(f5, 0, {}, {2, 3}).edge_count() == 0);

    // Complete host on 4 vertices: triples through 0 give pairs 12, 13, 23.
    const auto k4 = Hypergraph3::build(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
    const auto l = link_graph(k4, 0, {1, 2}, {1, 2, 3});
    REQUIRE(l.edge_count() == 3);
    REQUIRE(l.contains(1, 2));
    REQUIRE(l.contains(1, 3));
    REQUIRE(l.contains(2, 3));
}

TEST_CASE("codegree", "[hypergraph]") {
    const int n = 6;
    std::vector<Edge3> all;
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b)
            for (Vertex c = b + 1; c < n; ++c) all.push_back({a, b, c});
    const auto kn = Hypergraph3::build(n, all);
    REQUIRE(codegree(kn, 0, 1, all_vertices(n)).second == n - 2);

    const auto f5 = make_f5();
    const auto [nbrs, cnt] = codegree(f5, 0, 1, all_vertices(5));
    REQUIRE(cnt == 2);
    REQUIRE(nbrs == std::vector<Vertex>{2, 3});
    REQUIRE(codegree(f5, 0, 4, all_vertices(5)).second == 0);
    REQUIRE_THROWS_AS(codegree(f5, 2, 2, all_vertices(5)), std::invalid_argument);

    // Symmetry on a random instance.
    const auto g = sample_g3(9, 0.4, Seed{7});
    for (Vertex u = 0; u < 9; ++u)
        for (Vertex v = u + 1; v < 9; ++v)
            REQUIRE(codegree(g, u, v, all_vertices(9)).second == codegree(g, v, u, all_vertices(9)).second);
}

TEST_CASE("common link", "[hypergraph]") {
    const auto f5 = make_f5();
    REQUIRE(common_link(f5, 0, 1, {2}, {3}).edge_count() == 0);  // 023 and 123 both absent
    REQUIRE_THROWS_AS(common_link(f5, 1, 1, {2}, {3}), std::invalid_argument);

    // u, v with identical links: intersection equals either link.
    const auto h = Hypergraph3::build(5, {{0, 2, 3}, {1, 2, 3}, {0, 2, 4}, {1, 2, 4}});
    const auto lu = link_graph(h, 0, {2}, {3, 4});
    const auto common = common_link(h, 0, 1, {2}, {3, 4});
    REQUIRE(common.edge_count() == lu.edge_count());

    // Complete host: all crossing pairs of disjoint parts.
    const int n = 7;
    std::vector<Edge3> all;
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b)
            for (Vertex c = b + 1; c < n; ++c) all.push_back({a, b, c});
    const auto kn = Hypergraph3::build(n, all);
    REQUIRE(common_link(kn, 0, 1, {2, 3}, {4, 5, 6}).edge_count() == 2 * 3);

    // Subset property on a random instance.
    const auto g = sample_g3(9, 0.5, Seed{11});
    const std::vector<Vertex> s{2, 3, 4}, t{5, 6, 7, 8};
    const auto cl = common_link(g, 0, 1, s, t);
    const auto l0 = link_graph(g, 0, s, t), l1 = link_graph(g, 1, s, t);
    for (const Edge2& e : cl.edges()) {
        REQUIRE(l0.contains(e[0], e[1]));
        REQUIRE(l1.contains(e[0], e[1]));
    }
}

TEST_CASE("partition split", "[hypergraph]") {
    auto [s6, pi6] = balanced_tripartite(6);
    const auto sp = partition_split(s6, s6, pi6);
    REQUIRE(sp.hbar_pi.edge_count() == 0);
    REQUIRE(sp.h_pi.edge_count() == s6.edge_count());
    REQUIRE(sp.h_i[0].edge_count() == 0);
    REQUIRE(sp.h_i[1].edge_count() == 0);
    REQUIRE(sp.h_i[2].edge_count() == 0);

    const auto f5 = make_f5();
    Partition3 pi(std::vector<std::uint8_t>{1, 1, 2, 2, 3});
    const auto spf = partition_split(f5, f5, pi);
    REQUIRE(spf.h_pi.edge_count() == 0);
    REQUIRE(spf.h_i[0].edge_count() == 2);  // 012, 013
    REQUIRE(spf.h_i[1].edge_count() == 1);  // 234
    REQUIRE(spf.h_i[2].edge_count() == 0);

    const auto g = sample_g3(8, 0.4, Seed{3});
    REQUIRE_THROWS_AS(partition_split(Hypergraph3::build(8, {}), g, Partition3::contiguous_thirds(8)),
                      std::invalid_argument);

    // |H_pi| + sum |H_i| = |H| on random instances and partitions.
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto host = sample_g3(9, 0.35, Seed{seed});
        rng::SplitMix mix(seed * 77 + 1);
        std::vector<std::uint8_t> parts(9);
        for (auto& x : parts) x = static_cast<std::uint8_t>(1 + mix.next_below(3));
        const Partition3 rp(parts);
        const auto rs = partition_split(host, host, rp);
        REQUIRE(rs.h_pi.edge_count() + rs.h_i[0].edge_count() + rs.h_i[1].edge_count() + rs.h_i[2].edge_count() ==
                host.edge_count());
        REQUIRE(rs.hbar_pi.edge_count() == 0);
    }
}

TEST_CASE("q_set thresholds", "[hypergraph]") {
    const int n = 9;
    std::vector<Edge3> all;
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b)
            for (Vertex c = b + 1; c < n; ++c) all.push_back({a, b, c});
    const auto kn = Hypergraph3::build(n, all);
    const auto pi = Partition3::contiguous_thirds(n);
    REQUIRE(q_set(kn, pi, 1.0).empty());  // |L| = 9 = n^2/9 >= 0.8 n^2/9

    const auto empty = Hypergraph3::build(n, {});
    const auto q_all = q_set(empty, pi, 1.0);
    REQUIRE(static_cast<int>(q_all.size()) == 3);  // C(|V1|,2) with |V1| = 3

    REQUIRE(q_set(kn, pi, 0.0).empty());

    // Antitone in p on a random instance.
    const auto g = sample_g3(12, 0.5, Seed{5});
    const auto pi12 = Partition3::contiguous_thirds(12);
    std::vector<double> ps{0.1, 0.3, 0.5, 0.8, 1.0};
    std::set<Edge2> prev;
    for (double p : ps) {
        const auto q = q_set(g, pi12, p);
        std::set<Edge2> cur(q.begin(), q.end());
        for (const Edge2& e : prev) REQUIRE(cur.count(e) == 1);
        prev = cur;
    }
}

TEST_CASE("balanced partitions", "[hypergraph]") {
    REQUIRE(Partition3(std::vector<std::uint8_t>{1, 1, 2, 2, 3, 3}).is_balanced());
    REQUIRE_FALSE(Partition3(std::vector<std::uint8_t>{1, 2, 2, 3, 3, 3}).is_balanced());
    REQUIRE(Partition3(std::vector<std::uint8_t>{1, 2, 3}).is_balanced());
}

TEST_CASE("shadow edge bound", "[hypergraph]") {
    // At most 3|H| shadow edges, equality iff no two edges share a pair.
    const auto disjoint = Hypergraph3::build(9, {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}});
    REQUIRE(shadow(disjoint).edge_count() == 3 * disjoint.edge_count());
    const auto sharing = Hypergraph3::build(5, {{0, 1, 2}, {0, 1, 3}});
    REQUIRE(shadow(sharing).edge_count() < 3 * sharing.edge_count());
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto g = sample_g3(8, 0.3, Seed{seed + 100});
        REQUIRE(shadow(g).edge_count() <= 3 * g.edge_count());
    }
}

TEST_CASE("serialization round trip", "[hypergraph]") {
    const auto g = sample_g3(10, 0.3, Seed{99});
    std::stringstream ss;
    g.write(ss);
    const auto back = Hypergraph3::read(ss);
    REQUIRE(back.vertex_count() == g.vertex_count());
    REQUIRE(back.edges() == g.edges());

    const auto pi = Partition3::contiguous_thirds(10);
    std::stringstream ps;
    pi.write(ps);
    const auto pback = Partition3::read(ps, 10);
    for (Vertex v = 0; v < 10; ++v) REQUIRE(pback.part(v) == pi.part(v));

    std::stringstream bad("3 2\n0 1 2\n");
    REQUIRE_THROWS_AS(Hypergraph3::read(bad), std::invalid_argument);
}

#pragma once

// Exact and heuristic optimization over a host hypergraph: maximum F5-free
// edge subsets (branch and bound with lazily discovered F5 constraints),
// rainbow-tripartiteness certification, and best-3-partition search.

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>

#include "hypergraph.hpp"
#include "motifs.hpp"
#include "random_model.hpp"

namespace f5lab {

/// Thrown when an exact search exceeds its configured node budget.
class budget_error : public std::runtime_error {
public:
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

struct SolveStats {
    std::int64_t nodes = 0;
    std::int64_t leaf_checks = 0;
    std::int64_t pool_copies = 0;
    double seconds = 0.0;
};

enum class SolveMode { Exact, Greedy };

struct SolveResult {
    std::int64_t optimum = 0;
    std::vector<Edge3> witness;
    std::optional<std::vector<std::vector<Edge3>>> all_optima;
    bool truncated = false;  // enumeration hit the cap or its budget
    bool exact = false;      // proven maximum (exact mode only)
    SolveStats stats;
};

namespace detail {

// Branch and bound over edge inclusion. Constraints ("among the 3 edges of
// an F5 copy, at most 2 chosen") are discovered lazily: a leaf candidate is
// accepted only after an authoritative freeness check, which feeds any
// violated copies back into the pool. The bound is
//   |chosen| + |undecided| - (greedy packing of live copies with pairwise
//                             disjoint undecided edge sets),
// valid because each live copy forces at least one future exclusion; a
// packing over any pool prefix is still a bound, so the per-node scan is
// capped to keep budget-censored instances cheap.
class F5FreeSearch {
public:
    F5FreeSearch(const Hypergraph3& host, std::int64_t node_budget)
        : host_(host), m_(static_cast<int>(host.edge_count())), budget_(node_budget) {
        state_.assign(static_cast<std::size_t>(m_), kUndecided);
        edge_copies_.resize(static_cast<std::size_t>(m_));
        scratch_mark_.assign(static_cast<std::size_t>(m_), 0);
        part_count_.assign(static_cast<std::size_t>(m_), 0);
        for (int i = 0; i < m_; ++i)
            edge_index_[detail::triple_key(host.edges()[static_cast<std::size_t>(i)], host.vertex_count())] = i;
        undecided_ = m_;
    }

    SolveStats stats;

    /// Finds one maximum F5-free subset, seeded with a known solution.
    std::vector<int> solve(const std::vector<int>& incumbent_edges) {
        best_value_ = static_cast<std::int64_t>(incumbent_edges.size());
        best_edges_ = incumbent_edges;
        enumerate_mode_ = false;
        dfs();
        return best_edges_;
    }

    /// Collects every F5-free subset of size exactly `target` (up to cap),
    /// with a fresh node budget. Returns false when truncated.
    bool enumerate(std::int64_t target, std::int64_t cap, std::int64_t node_budget,
                   std::vector<std::vector<int>>* out) {
        best_value_ = target;
        enumerate_mode_ = true;
        enum_cap_ = cap;
        enum_out_ = out;
        truncated_ = false;
        budget_ = stats.nodes + node_budget;
        try {
            dfs();
        } catch (const budget_error&) {
            truncated_ = true;
        }
        return !truncated_;
    }

private:
    static constexpr std::int8_t kUndecided = 0, kChosen = 1, kExcluded = 2;
    static constexpr std::size_t kScanCap = 1024;  // live copies scanned per node

    struct Copy {
        std::array<int, 3> e;
        int chosen = 0;
        int excluded = 0;
    };

    bool exhausted(std::int64_t weak, std::int64_t bound) const {
        if (enumerate_mode_) return bound < best_value_ || weak < best_value_;
        return bound <= best_value_ || weak <= best_value_;
    }

    void dfs() {
        stats.nodes++;
        if (stats.nodes > budget_) throw budget_error("max_f5_free node budget exhausted");

        const std::int64_t weak = chosen_ + undecided_;
        if (exhausted(weak, weak)) return;

        // One capped pool scan: greedy disjoint packing for the bound plus
        // per-edge live-copy participation for branch selection.
        ++epoch_;
        std::int64_t packed = 0;
        int branch_edge = -1;
        std::int64_t branch_score = -1;
        std::size_t scanned = 0;
        for (const Copy& c : pool_) {
            if (c.excluded > 0 || c.chosen == 3) continue;
            if (++scanned > kScanCap) break;
            bool disjoint = true;
            for (int e : c.e)
                if (state_[static_cast<std::size_t>(e)] == kUndecided &&
                    scratch_mark_[static_cast<std::size_t>(e)] == epoch_)
                    disjoint = false;
            if (disjoint) {
                ++packed;
                for (int e : c.e)
                    if (state_[static_cast<std::size_t>(e)] == kUndecided)
                        scratch_mark_[static_cast<std::size_t>(e)] = epoch_;
            }
            for (int e : c.e) {
                if (state_[static_cast<std::size_t>(e)] != kUndecided) continue;
                if (part_count_[static_cast<std::size_t>(e)] == 0) touched_.push_back(e);
                const std::int64_t score = ++part_count_[static_cast<std::size_t>(e)];
                if (score > branch_score) {
                    branch_score = score;
                    branch_edge = e;
                }
            }
        }
        for (int e : touched_) part_count_[static_cast<std::size_t>(e)] = 0;
        touched_.clear();
        if (exhausted(weak, weak - packed)) return;

        if (undecided_ == 0) {
            leaf();
            return;
        }
        if (branch_edge < 0)
            for (int e = 0; e < m_; ++e)
                if (state_[static_cast<std::size_t>(e)] == kUndecided) {
                    branch_edge = e;
                    break;
                }

        {
            const std::size_t mark = trail_.size();
            if (apply(branch_edge, kChosen) && propagate()) dfs();
            unwind(mark);
        }
        {
            const std::size_t mark = trail_.size();
            if (apply(branch_edge, kExcluded) && propagate()) dfs();
            unwind(mark);
        }
    }

    void leaf() {
        stats.leaf_checks++;
        std::vector<int> chosen_edges;
        chosen_edges.reserve(static_cast<std::size_t>(chosen_));
        std::vector<Edge3> triples;
        for (int e = 0; e < m_; ++e)
            if (state_[static_cast<std::size_t>(e)] == kChosen) {
                chosen_edges.push_back(e);
                triples.push_back(host_.edges()[static_cast<std::size_t>(e)]);
            }
        Hypergraph3 candidate = Hypergraph3::build(host_.vertex_count(), triples);
        std::vector<F5Copy> found;
        count_f5(candidate, &found, 64);
        if (!found.empty()) {
            for (const F5Copy& c : found) add_copy(c);
            return;
        }
        if (enumerate_mode_) {
            if (chosen_ == best_value_) {
                if (static_cast<std::int64_t>(enum_out_->size()) >= enum_cap_) {
                    truncated_ = true;
                    throw budget_error("enumeration cap reached");
                }
                enum_out_->push_back(chosen_edges);
            }
            return;
        }
        if (chosen_ > best_value_) {
            best_value_ = chosen_;
            best_edges_ = chosen_edges;
        }
    }

    bool apply(int e, std::int8_t to) {
        trail_.push_back(e);
        state_[static_cast<std::size_t>(e)] = to;
        undecided_--;
        if (to == kChosen) chosen_++;
        bool ok = true;
        for (int ci : edge_copies_[static_cast<std::size_t>(e)]) {
            Copy& c = pool_[static_cast<std::size_t>(ci)];
            if (to == kChosen) {
                c.chosen++;
                if (c.excluded == 0) {
                    if (c.chosen == 3) ok = false;
                    if (c.chosen == 2) pending_.push_back(ci);
                }
            } else {
                c.excluded++;
            }
        }
        return ok;
    }

    // Excludes the remaining edge of any copy with two chosen, none excluded.
    bool propagate() {
        while (!pending_.empty()) {
            const int ci = pending_.back();
            pending_.pop_back();
            const Copy& c = pool_[static_cast<std::size_t>(ci)];
            if (c.excluded > 0 || c.chosen != 2) continue;
            for (int e : c.e)
                if (state_[static_cast<std::size_t>(e)] == kUndecided)
                    if (!apply(e, kExcluded)) {
                        pending_.clear();
                        return false;
                    }
        }
        return true;
    }

    void unwind(std::size_t mark) {
        pending_.clear();
        while (trail_.size() > mark) {
            const int e = trail_.back();
            trail_.pop_back();
            const std::int8_t was = state_[static_cast<std::size_t>(e)];
            state_[static_cast<std::size_t>(e)] = kUndecided;
            undecided_++;
            if (was == kChosen) chosen_--;
            for (int ci : edge_copies_[static_cast<std::size_t>(e)]) {
                Copy& c = pool_[static_cast<std::size_t>(ci)];
                if (was == kChosen)
                    c.chosen--;
                else
                    c.excluded--;
            }
        }
    }

    void add_copy(const F5Copy& copy) {
        std::array<int, 3> idx{index_of(copy.pair_edge1), index_of(copy.pair_edge2), index_of(copy.base_edge)};
        std::sort(idx.begin(), idx.end());
        const auto mm = static_cast<std::uint64_t>(m_);
        const std::uint64_t key = (static_cast<std::uint64_t>(idx[0]) * mm + static_cast<std::uint64_t>(idx[1])) * mm +
                                  static_cast<std::uint64_t>(idx[2]);
        if (!copy_keys_.insert(key).second) return;
        Copy c;
        c.e = idx;
        for (int e : idx) {
            if (state_[static_cast<std::size_t>(e)] == kChosen) c.chosen++;
            if (state_[static_cast<std::size_t>(e)] == kExcluded) c.excluded++;
        }
        const int ci = static_cast<int>(pool_.size());
        pool_.push_back(c);
        for (int e : idx) edge_copies_[static_cast<std::size_t>(e)].push_back(ci);
        stats.pool_copies = static_cast<std::int64_t>(pool_.size());
    }

    int index_of(const Edge3& e) const { return edge_index_.at(detail::triple_key(e, host_.vertex_count())); }

    const Hypergraph3& host_;
    int m_;
    std::int64_t budget_;
    std::vector<std::int8_t> state_;
    std::int64_t chosen_ = 0, undecided_ = 0;
    std::vector<Copy> pool_;
    std::vector<std::vector<int>> edge_copies_;
    std::unordered_set<std::uint64_t> copy_keys_;
    std::unordered_map<std::uint64_t, int> edge_index_;
    std::vector<int> trail_;
    std::vector<int> pending_;
    std::vector<std::uint32_t> scratch_mark_;
    std::uint32_t epoch_ = 0;
    std::vector<std::int64_t> part_count_;
    std::vector<int> touched_;

    std::int64_t best_value_ = -1;
    std::vector<int> best_edges_;

    bool enumerate_mode_ = false;
    std::int64_t enum_cap_ = 0;
    std::vector<std::vector<int>>* enum_out_ = nullptr;
    bool truncated_ = false;
};

inline Hypergraph3 subhypergraph_from_indices(const Hypergraph3& host, const std::vector<int>& idx) {
    std::vector<Edge3> triples;
    triples.reserve(idx.size());
    for (int i : idx) triples.push_back(host.edges()[static_cast<std::size_t>(i)]);
    return Hypergraph3::build(host.vertex_count(), triples);
}

}  // namespace detail

/// Maximal F5-free subset: repeatedly delete the most copy-laden edge among
/// the discovered copies, then re-add any over-deleted edges.
inline std::vector<Edge3> greedy_f5_free(const Hypergraph3& host, std::int64_t copy_cap = 200000) {
    Hypergraph3 h = host;
    std::vector<Edge3> removed;
    while (true) {
        std::vector<F5Copy> copies;
        count_f5(h, &copies, copy_cap);
        if (copies.empty()) break;
        std::unordered_map<std::uint64_t, std::int64_t> participation;
        for (const F5Copy& c : copies)
            for (const Edge3* e : {&c.pair_edge1, &c.pair_edge2, &c.base_edge})
                participation[detail::triple_key(*e, host.vertex_count())]++;
        // Highest participation; ties go to the canonically smallest edge.
        const Edge3* worst = nullptr;
        std::int64_t worst_score = -1;
        for (const Edge3& e : h.edges()) {
            auto it = participation.find(detail::triple_key(e, host.vertex_count()));
            if (it == participation.end()) continue;
            if (it->second > worst_score) {
                worst_score = it->second;
                worst = &e;
            }
        }
        const Edge3 to_remove = *worst;
        removed.push_back(to_remove);
        std::vector<Edge3> next;
        next.reserve(h.edges().size() - 1);
        for (const Edge3& e : h.edges())
            if (e != to_remove) next.push_back(e);
        h = Hypergraph3::build(host.vertex_count(), next);
    }
    for (const Edge3& e : removed) {
        std::vector<Edge3> next = h.edges();
        next.push_back(e);
        Hypergraph3 candidate = Hypergraph3::build(host.vertex_count(), next);
        if (is_f5_free(candidate)) h = std::move(candidate);
    }
    return h.edges();
}

/// Maximum (exact mode, proven) or maximal (greedy mode) F5-free edge subset
/// of the host. Exact mode throws budget_error past `node_budget`.
inline SolveResult max_f5_free(const Hypergraph3& host, SolveMode mode, bool enumerate_all = false,
                               std::int64_t cap = 1000000, std::int64_t node_budget = 5000000) {
    const auto t0 = std::chrono::steady_clock::now();
    SolveResult result;
    if (mode == SolveMode::Greedy) {
        result.witness = greedy_f5_free(host);
        result.optimum = static_cast<std::int64_t>(result.witness.size());
        result.exact = false;
        result.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return result;
    }

    std::vector<int> greedy_idx;
    {
        const std::vector<Edge3> greedy = greedy_f5_free(host);
        std::unordered_map<std::uint64_t, int> index;
        for (int i = 0; i < static_cast<int>(host.edge_count()); ++i)
            index[detail::triple_key(host.edges()[static_cast<std::size_t>(i)], host.vertex_count())] = i;
        for (const Edge3& e : greedy) greedy_idx.push_back(index.at(detail::triple_key(e, host.vertex_count())));
        std::sort(greedy_idx.begin(), greedy_idx.end());
    }

    detail::F5FreeSearch search(host, node_budget);
    std::vector<int> best = search.solve(greedy_idx);
    result.optimum = static_cast<std::int64_t>(best.size());
    result.witness = detail::subhypergraph_from_indices(host, best).edges();
    result.exact = true;

    if (enumerate_all) {
        std::vector<std::vector<int>> optima;
        const bool complete = search.enumerate(result.optimum, cap, node_budget, &optima);
        result.truncated = !complete;
        std::vector<std::vector<Edge3>> sets;
        sets.reserve(optima.size());
        for (const auto& idx : optima) sets.push_back(detail::subhypergraph_from_indices(host, idx).edges());
        result.all_optima = std::move(sets);
    }
    result.stats = search.stats;
    result.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

/// Rainbow 3-partition search by backtracking: most-constrained vertex
/// first, part labels introduced in canonical order, edges with two vertices
/// already in one part pruned immediately.
inline std::optional<Partition3> is_tripartite(const Hypergraph3& h) {
    const int n = h.vertex_count();
    std::vector<std::uint8_t> part(static_cast<std::size_t>(n), 0);

    auto allowed_parts = [&](Vertex v) {
        std::array<bool, 4> ok{false, true, true, true};
        for (std::int32_t idx : h.edges_through(v))
            for (Vertex w : h.edges()[static_cast<std::size_t>(idx)])
                if (w != v && part[static_cast<std::size_t>(w)] != 0) ok[part[static_cast<std::size_t>(w)]] = false;
        return ok;
    };

    std::vector<Vertex> active;
    for (Vertex v = 0; v < n; ++v)
        if (!h.edges_through(v).empty()) active.push_back(v);

    std::function<bool(int, int)> assign = [&](int done, int used) -> bool {
        if (done == static_cast<int>(active.size())) return true;
        Vertex pick = -1;
        int pick_count = 4;
        std::array<bool, 4> pick_ok{};
        for (Vertex v : active) {
            if (part[static_cast<std::size_t>(v)] != 0) continue;
            const auto ok = allowed_parts(v);
            const int cnt = (ok[1] ? 1 : 0) + (ok[2] ? 1 : 0) + (ok[3] ? 1 : 0);
            if (cnt < pick_count) {
                pick_count = cnt;
                pick = v;
                pick_ok = ok;
                if (cnt == 0) return false;
            }
        }
        const int label_limit = std::min(3, used + 1);
        for (int c = 1; c <= label_limit; ++c) {
            if (!pick_ok[static_cast<std::size_t>(c)]) continue;
            part[static_cast<std::size_t>(pick)] = static_cast<std::uint8_t>(c);
            if (assign(done + 1, std::max(used, c))) return true;
            part[static_cast<std::size_t>(pick)] = 0;
        }
        return false;
    };

    if (!assign(0, 0)) return std::nullopt;
    for (auto& p : part)
        if (p == 0) p = 1;  // isolated vertices go anywhere
    Partition3 pi(std::move(part));
    for (const Edge3& e : h.edges())
        if (!pi.rainbow(e)) throw std::logic_error("certificate failed rainbow check");
    return pi;
}

struct PartitionOpt {
    std::int64_t value = 0;
    Partition3 pi;
    bool exact = false;
    std::int64_t nodes = 0;
};

namespace detail {

// Exact max |G_pi| by restricted-growth enumeration: part labels are
// introduced in first-use order, which quotients out the 6 relabelings.
// Nodes are vertex assignments; prunes on m - broken <= best.
class PartitionSearch {
public:
    PartitionSearch(const Hypergraph3& g, std::int64_t budget) : g_(g), budget_(budget) {}

    PartitionOpt run() {
        part_.assign(static_cast<std::size_t>(g_.vertex_count()), 0);
        best_value_ = -1;
        dfs(0, 0, 0);
        PartitionOpt out;
        out.value = best_value_;
        std::vector<std::uint8_t> parts = best_part_;
        parts.resize(static_cast<std::size_t>(g_.vertex_count()), 1);
        for (auto& p : parts)
            if (p == 0) p = 1;
        out.pi = Partition3(std::move(parts));
        out.exact = true;
        out.nodes = nodes_;
        return out;
    }

private:
    void dfs(int v, int used, std::int64_t broken) {
        nodes_++;
        if (nodes_ > budget_) throw budget_error("partition enumeration budget exhausted");
        const std::int64_t m = g_.edge_count();
        if (m - broken <= best_value_) return;
        if (v == g_.vertex_count()) {
            best_value_ = m - broken;
            best_part_ = part_;
            return;
        }
        const int limit = std::min(3, used + 1);
        for (int c = 1; c <= limit; ++c) {
            part_[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(c);
            std::int64_t newly_broken = 0;
            for (std::int32_t idx : g_.edges_through(static_cast<Vertex>(v))) {
                const Edge3& e = g_.edges()[static_cast<std::size_t>(idx)];
                if (e[2] != v) continue;  // fully assigned exactly when v is its max vertex
                const int pa = part_[static_cast<std::size_t>(e[0])], pb = part_[static_cast<std::size_t>(e[1])];
                if (pa == pb || pa == c || pb == c) newly_broken++;
            }
            dfs(v + 1, std::max(used, c), broken + newly_broken);
            part_[static_cast<std::size_t>(v)] = 0;
        }
    }

    const Hypergraph3& g_;
    std::int64_t budget_;
    std::vector<std::uint8_t> part_, best_part_;
    std::int64_t best_value_ = -1;
    std::int64_t nodes_ = 0;
};

}  // namespace detail

enum class PartitionMode { Exact, LocalSearch };

/// t(G): edges of a maximum tripartite subhypergraph, with an attaining
/// partition. Exact mode is intended for n <= ~15; local search returns a
/// lower bound from single-vertex-move hill climbing with seeded restarts.
inline PartitionOpt t_of_g(const Hypergraph3& g, PartitionMode mode, std::int64_t node_budget = 50000000,
                           Seed seed = Seed{0}, int restarts = 8) {
    if (mode == PartitionMode::Exact) {
        detail::PartitionSearch search(g, node_budget);
        return search.run();
    }
    const int n = g.vertex_count();
    rng::SplitMix mix(seed.value);
    std::vector<std::uint8_t> best;
    std::int64_t best_value = -1;
    auto crossing_delta = [&](const std::vector<std::uint8_t>& part, Vertex v, std::uint8_t to) {
        std::int64_t delta = 0;
        for (std::int32_t idx : g.edges_through(v)) {
            const Edge3& e = g.edges()[static_cast<std::size_t>(idx)];
            Vertex a = -1, b = -1;
            for (Vertex w : e)
                if (w != v) (a < 0 ? a : b) = w;
            const std::uint8_t pa = part[static_cast<std::size_t>(a)], pb = part[static_cast<std::size_t>(b)];
            const std::uint8_t pv = part[static_cast<std::size_t>(v)];
            const bool before = pa != pb && pa != pv && pb != pv;
            const bool after = pa != pb && pa != to && pb != to;
            delta += (after ? 1 : 0) - (before ? 1 : 0);
        }
        return delta;
    };
    for (int r = 0; r < restarts; ++r) {
        std::vector<std::uint8_t> part(static_cast<std::size_t>(n));
        for (auto& p : part) p = static_cast<std::uint8_t>(1 + mix.next_below(3));
        bool improved = true;
        while (improved) {
            improved = false;
            for (Vertex v = 0; v < n; ++v)
                for (std::uint8_t c = 1; c <= 3; ++c) {
                    if (c == part[static_cast<std::size_t>(v)]) continue;
                    if (crossing_delta(part, v, c) > 0) {
                        part[static_cast<std::size_t>(v)] = c;
                        improved = true;
                    }
                }
        }
        std::int64_t value = 0;
        for (const Edge3& e : g.edges()) {
            const std::uint8_t a = part[static_cast<std::size_t>(e[0])], b = part[static_cast<std::size_t>(e[1])],
                               c = part[static_cast<std::size_t>(e[2])];
            if (a != b && b != c && a != c) ++value;
        }
        if (value > best_value) {
            best_value = value;
            best = part;
        }
    }
    PartitionOpt out;
    out.value = best_value;
    out.pi = Partition3(std::move(best));
    out.exact = false;
    return out;
}

/// Partition maximizing |H_pi|; same engine as t_of_g, since |H_pi| is the
/// crossing-edge count of H itself. Ties break to the first partition found
/// in the deterministic enumeration order.
inline PartitionOpt best_partition_for(const Hypergraph3& h, PartitionMode mode, std::int64_t node_budget = 50000000,
                                       Seed seed = Seed{0}) {
    return t_of_g(h, mode, node_budget, seed);
}

/// The Theorem-1 event on a solved instance: optimum at least t(G), every
/// enumerated optimum F5-free, and whether all of them are tripartite.
struct TheoremEventReport {
    std::int64_t optimum = 0;
    std::int64_t t_g = 0;
    bool optimum_ge_t = false;
    std::int64_t optima_checked = 0;
    bool truncated = false;
    bool all_f5_free = true;
    bool all_tripartite = true;
};

inline TheoremEventReport verify_max_and_tripartite(const Hypergraph3& g, const SolveResult& result,
                                                    std::int64_t partition_budget = 50000000) {
    if (!result.exact || !result.all_optima.has_value())
        throw std::invalid_argument("verify_max_and_tripartite needs an exact, enumerate_all result");
    TheoremEventReport rep;
    rep.optimum = result.optimum;
    rep.t_g = t_of_g(g, PartitionMode::Exact, partition_budget).value;
    rep.optimum_ge_t = rep.optimum >= rep.t_g;
    rep.truncated = result.truncated;
    for (const auto& edges : *result.all_optima) {
        Hypergraph3 sub = Hypergraph3::build(g.vertex_count(), edges);
        if (static_cast<std::int64_t>(edges.size()) != result.optimum || !sub.is_subhypergraph_of(g))
            throw std::logic_error("enumerated optimum is not an optimum-size subhypergraph of G");
        if (!is_f5_free(sub)) rep.all_f5_free = false;
        if (!is_tripartite(sub).has_value()) rep.all_tripartite = false;
        rep.optima_checked++;
    }
    return rep;
}

}  // namespace f5lab

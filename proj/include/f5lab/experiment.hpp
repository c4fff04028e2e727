#pragma once

// Experiment campaigns with persistent machine-readable results: threshold
// sweeps (Theorem-1 event at exactly solvable scale), concentration
// censuses, proposition audits, and bound verification.
//
// Reproducibility contract: per-trial seeds are derived as
// mix(master, n, c_index, trial_index); records are computed into slots
// keyed by (n, c, trial) and written in that canonical order, so reruns
// with the same config are byte-identical even with a worker pool. Wall
// times are emitted only when the config asks for them.

#include <atomic>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "analysis.hpp"
#include "bounds.hpp"
#include "hypergraph.hpp"
#include "motifs.hpp"
#include "random_model.hpp"
#include "solver.hpp"

#include "json.hpp"

namespace f5lab {

using ordered_json = nlohmann::ordered_json;

class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

struct ExperimentConfig {
    std::string kind;  // sweep | census | audit | bounds
    std::vector<int> n_list;
    std::string schedule = "constant";
    std::vector<double> c_list;
    int trials = 1;
    std::uint64_t seed = 0;
    std::int64_t node_budget = 300000;
    std::int64_t partition_budget = 50000000;
    std::int64_t enum_cap = 20000;
    int workers = 1;
    bool timings = false;
    std::string out;
    bool force = false;
    std::string fixture;  // audit: "sn" uses G = H = S(n) with its natural partition

    // bounds kind
    std::vector<double> bound_n = {1e6, 1e9, 1e12};
    double bigC = 1e4;
    int grid_points = 32;
    Constants constants = Constants::paper_example();

    static ExperimentConfig from_json(const nlohmann::json& j) {
        ExperimentConfig cfg;
        cfg.kind = j.value("kind", std::string{});
        if (j.contains("n")) cfg.n_list = j.at("n").get<std::vector<int>>();
        cfg.schedule = j.value("schedule", cfg.schedule);
        if (j.contains("c")) cfg.c_list = j.at("c").get<std::vector<double>>();
        cfg.trials = j.value("trials", cfg.trials);
        cfg.seed = j.value("seed", cfg.seed);
        cfg.node_budget = j.value("budget", cfg.node_budget);
        cfg.partition_budget = j.value("partition_budget", cfg.partition_budget);
        cfg.enum_cap = j.value("enum_cap", cfg.enum_cap);
        cfg.workers = j.value("workers", cfg.workers);
        cfg.timings = j.value("timings", cfg.timings);
        cfg.out = j.value("out", cfg.out);
        cfg.force = j.value("force", cfg.force);
        cfg.fixture = j.value("fixture", cfg.fixture);
        if (j.contains("bound_n")) cfg.bound_n = j.at("bound_n").get<std::vector<double>>();
        cfg.bigC = j.value("bigC", cfg.bigC);
        cfg.grid_points = j.value("grid_points", cfg.grid_points);
        if (j.contains("constants")) {
            const auto& c = j.at("constants");
            cfg.constants.delta = c.value("delta", cfg.constants.delta);
            cfg.constants.eps1 = c.value("eps1", cfg.constants.eps1);
            cfg.constants.eps2 = c.value("eps2", cfg.constants.eps2);
            cfg.constants.eps3 = c.value("eps3", cfg.constants.eps3);
            cfg.constants.bigC = c.value("bigC", cfg.constants.bigC);
        }
        return cfg;
    }

    void validate() const {
        if (kind != "sweep" && kind != "census" && kind != "audit" && kind != "bounds")
            throw config_error("unknown experiment kind: '" + kind + "'");
        if (trials < 1) throw config_error("trials must be >= 1");
        if (kind == "sweep")
            for (int n : n_list)
                if (n > 15) throw config_error("threshold_sweep exact mode requires n <= 15");
        if (kind != "bounds" && (n_list.empty() || c_list.empty()))
            throw config_error(kind + " needs nonempty n and c lists");
    }
};

namespace detail {

inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

template <typename Fn>
void parallel_for(int workers, int count, Fn fn) {
    if (workers <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    const int nthreads = std::min(workers, count);
    pool.reserve(static_cast<std::size_t>(nthreads));
    for (int t = 0; t < nthreads; ++t)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    for (auto& th : pool) th.join();
}

}  // namespace detail

inline ordered_json analysis_report_to_json(const AnalysisReport& rep) {
    ordered_json sizes;
    sizes["H"] = rep.h_size;
    sizes["H_pi"] = rep.h_pi;
    sizes["Hbar_pi"] = rep.hbar_pi;
    sizes["G_pi"] = rep.g_pi;
    sizes["H1"] = rep.h1;
    sizes["H2"] = rep.h2;
    sizes["H3"] = rep.h3;
    sizes["Q"] = rep.q_size;
    sizes["J"] = rep.j_size;
    sizes["B"] = rep.b_size;
    sizes["H_prime"] = rep.h_prime;
    sizes["S"] = rep.s_size;
    sizes["S1"] = rep.s1_size;
    sizes["S2"] = rep.s2_size;
    sizes["H1_1"] = rep.h1_split[0];
    sizes["H1_2"] = rep.h1_split[1];
    sizes["H1_3"] = rep.h1_split[2];
    sizes["F5hat"] = rep.f5hat;
    sizes["t_G"] = rep.t_g;
    ordered_json lines = ordered_json::array();
    for (const AuditLine& line : rep.lines) {
        ordered_json l;
        l["lemma_id"] = line.lemma_id;
        l["lhs"] = line.lhs;
        l["rhs"] = line.rhs;
        l["holds"] = line.holds;
        l["preconditions_met"] = line.preconditions_met;
        if (!line.note.empty()) l["note"] = line.note;
        lines.push_back(l);
    }
    ordered_json j;
    j["n"] = rep.n;
    j["p"] = rep.p;
    j["balanced"] = rep.balanced;
    j["divided_regime"] = rep.divided_regime;
    j["sizes"] = sizes;
    j["lines"] = lines;
    return j;
}

// ---------------------------------------------------------------------------
// Threshold sweep

struct SweepTrial {
    int n = 0;
    double c = 0.0, p = 0.0;
    int trial = 0;
    std::uint64_t seed = 0;
    std::int64_t m = 0;
    bool censored = false;
    std::int64_t optimum = 0, t_g = 0;
    std::int64_t n_optima = 0;
    bool truncated = false;
    bool all_tripartite = false, all_f5_free = false, optimum_ge_t = false;
    std::int64_t nodes = 0;
    double seconds = 0.0;
};

inline SweepTrial run_sweep_trial(const ExperimentConfig& cfg, int n, std::size_t c_index, int trial) {
    SweepTrial rec;
    rec.n = n;
    rec.c = cfg.c_list[c_index];
    rec.p = schedule_p(PSchedule{schedule_kind_from_string(cfg.schedule), rec.c}, n);
    rec.trial = trial;
    rec.seed = derive_trial_seed(Seed{cfg.seed}, static_cast<std::uint64_t>(n), c_index,
                                 static_cast<std::uint64_t>(trial))
                   .value;
    const auto t0 = std::chrono::steady_clock::now();
    const Hypergraph3 g = sample_g3(n, rec.p, Seed{rec.seed});
    rec.m = g.edge_count();
    try {
        const SolveResult res = max_f5_free(g, SolveMode::Exact, true, cfg.enum_cap, cfg.node_budget);
        const TheoremEventReport ev = verify_max_and_tripartite(g, res, cfg.partition_budget);
        rec.optimum = res.optimum;
        rec.t_g = ev.t_g;
        rec.n_optima = ev.optima_checked;
        rec.truncated = ev.truncated;
        rec.all_tripartite = ev.all_tripartite;
        rec.all_f5_free = ev.all_f5_free;
        rec.optimum_ge_t = ev.optimum_ge_t;
        rec.nodes = res.stats.nodes;
    } catch (const budget_error&) {
        rec.censored = true;
    }
    rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

inline ordered_json sweep_trial_to_json(const ExperimentConfig& cfg, const SweepTrial& rec) {
    ordered_json j;
    j["kind"] = "sweep";
    j["n"] = rec.n;
    j["c"] = rec.c;
    j["p"] = rec.p;
    j["trial"] = rec.trial;
    j["master_seed"] = cfg.seed;
    j["seed"] = rec.seed;
    j["m"] = rec.m;
    j["censored"] = rec.censored;
    if (!rec.censored) {
        j["optimum"] = rec.optimum;
        j["t_G"] = rec.t_g;
        j["n_optima"] = rec.n_optima;
        j["truncated"] = rec.truncated;
        j["all_tripartite"] = rec.all_tripartite;
        j["all_f5_free"] = rec.all_f5_free;
        j["optimum_ge_t"] = rec.optimum_ge_t;
        j["nodes"] = rec.nodes;
    }
    if (cfg.timings) j["seconds"] = rec.seconds;
    return j;
}

/// Runs the sweep; JSONL per trial plus one aggregate CSV row per (n, c).
/// Returns the trial records (canonical order); sets *any_censored.
inline std::vector<SweepTrial> run_threshold_sweep(const ExperimentConfig& cfg, std::ostream& jsonl,
                                                   std::ostream& agg_csv, bool* any_censored = nullptr) {
    cfg.validate();
    struct Point {
        int n;
        std::size_t ci;
        int trial;
    };
    std::vector<Point> points;
    for (int n : cfg.n_list)
        for (std::size_t ci = 0; ci < cfg.c_list.size(); ++ci)
            for (int t = 0; t < cfg.trials; ++t) points.push_back({n, ci, t});
    std::vector<SweepTrial> records(points.size());
    detail::parallel_for(cfg.workers, static_cast<int>(points.size()), [&](int i) {
        const Point& pt = points[static_cast<std::size_t>(i)];
        records[static_cast<std::size_t>(i)] = run_sweep_trial(cfg, pt.n, pt.ci, pt.trial);
    });

    for (const SweepTrial& rec : records) jsonl << sweep_trial_to_json(cfg, rec).dump() << '\n';

    agg_csv << "n,c,p,trials,censored,frac_all_tripartite,mean_optimum,mean_t_G\n";
    std::size_t base = 0;
    for (int n : cfg.n_list) {
        (void)n;
        for (std::size_t ci = 0; ci < cfg.c_list.size(); ++ci) {
            std::int64_t censored = 0, solved = 0, tripartite = 0, opt_sum = 0, t_sum = 0;
            double p = 0.0;
            for (int t = 0; t < cfg.trials; ++t) {
                const SweepTrial& rec = records[base + static_cast<std::size_t>(t)];
                p = rec.p;
                if (rec.censored) {
                    censored++;
                    continue;
                }
                solved++;
                tripartite += rec.all_tripartite ? 1 : 0;
                opt_sum += rec.optimum;
                t_sum += rec.t_g;
            }
            const SweepTrial& first = records[base];
            agg_csv << first.n << ',' << detail::fmt_double(first.c) << ',' << detail::fmt_double(p) << ','
                    << cfg.trials << ',' << censored << ','
                    << detail::fmt_double(solved > 0 ? static_cast<double>(tripartite) / static_cast<double>(solved)
                                                     : 0.0)
                    << ','
                    << detail::fmt_double(solved > 0 ? static_cast<double>(opt_sum) / static_cast<double>(solved) : 0.0)
                    << ','
                    << detail::fmt_double(solved > 0 ? static_cast<double>(t_sum) / static_cast<double>(solved) : 0.0)
                    << '\n';
            base += static_cast<std::size_t>(cfg.trials);
        }
    }
    if (any_censored) {
        *any_censored = false;
        for (const SweepTrial& rec : records)
            if (rec.censored) *any_censored = true;
    }
    return records;
}

// ---------------------------------------------------------------------------
// Concentration census

inline std::string census_csv_header() {
    return "n,c,p,trial,master_seed,seed,m,min_deg,max_deg,mean_deg,exact_mean,lemma4_center,deg_band_ok,"
           "crossing_min,crossing_max,crossing_worst_rel_dev,max_codeg,lemma6_bound,codeg_within,"
           "s_size,pairs_ge_3pn,lemma7_bound,pairs_within";
}

struct CensusTrial {
    int n = 0;
    double c = 0.0, p = 0.0;
    int trial = 0;
    std::uint64_t seed = 0;
    std::int64_t m = 0;
    CensusReport census;
    bool deg_band_ok = false;  // every degree within (1 +- 0.15) p C(n-1,2)
};

inline CensusTrial run_census_trial(const ExperimentConfig& cfg, int n, std::size_t c_index, int trial) {
    CensusTrial rec;
    rec.n = n;
    rec.c = cfg.c_list[c_index];
    rec.p = schedule_p(PSchedule{schedule_kind_from_string(cfg.schedule), rec.c}, n);
    rec.trial = trial;
    rec.seed = derive_trial_seed(Seed{cfg.seed}, static_cast<std::uint64_t>(n), c_index,
                                 static_cast<std::uint64_t>(trial))
                   .value;
    const Hypergraph3 g = sample_g3(n, rec.p, Seed{rec.seed});
    rec.m = g.edge_count();
    const Partition3 pi = Partition3::contiguous_thirds(n);
    const std::vector<Vertex> s_set = pi.members(1);  // deterministic S for the Lemma-7 column
    rec.census = concentration_census(g, &pi, rec.p, &s_set);
    const double lo = 0.85 * rec.census.exact_mean, hi = 1.15 * rec.census.exact_mean;
    rec.deg_band_ok = static_cast<double>(rec.census.min_degree) >= lo &&
                      static_cast<double>(rec.census.max_degree) <= hi;
    return rec;
}

inline void census_trial_to_csv(const ExperimentConfig& cfg, const CensusTrial& rec, std::ostream& os) {
    const CensusReport& c = rec.census;
    os << rec.n << ',' << detail::fmt_double(rec.c) << ',' << detail::fmt_double(rec.p) << ',' << rec.trial << ','
       << cfg.seed << ',' << rec.seed << ',' << rec.m << ',' << c.min_degree << ',' << c.max_degree << ','
       << detail::fmt_double(c.mean_degree) << ',' << detail::fmt_double(c.exact_mean) << ','
       << detail::fmt_double(c.lemma4_center) << ',' << (rec.deg_band_ok ? 1 : 0) << ',' << c.crossing_min << ','
       << c.crossing_max << ',' << detail::fmt_double(c.crossing_worst_rel_dev) << ',' << c.max_codegree << ','
       << detail::fmt_double(c.lemma6_bound) << ',' << (c.max_codegree_within ? 1 : 0) << ',' << c.s_size << ','
       << c.pairs_codegree_ge_3pn << ',' << detail::fmt_double(c.lemma7_bound) << ',' << (c.pairs_within ? 1 : 0)
       << '\n';
}

inline std::vector<CensusTrial> run_census(const ExperimentConfig& cfg, std::ostream& csv) {
    cfg.validate();
    struct Point {
        int n;
        std::size_t ci;
        int trial;
    };
    std::vector<Point> points;
    for (int n : cfg.n_list)
        for (std::size_t ci = 0; ci < cfg.c_list.size(); ++ci)
            for (int t = 0; t < cfg.trials; ++t) points.push_back({n, ci, t});
    std::vector<CensusTrial> records(points.size());
    detail::parallel_for(cfg.workers, static_cast<int>(points.size()), [&](int i) {
        const Point& pt = points[static_cast<std::size_t>(i)];
        records[static_cast<std::size_t>(i)] = run_census_trial(cfg, pt.n, pt.ci, pt.trial);
    });
    csv << census_csv_header() << '\n';
    for (const CensusTrial& rec : records) census_trial_to_csv(cfg, rec, csv);
    return records;
}

// ---------------------------------------------------------------------------
// Proposition audit

struct AuditTrial {
    int n = 0;
    double c = 0.0, p = 0.0;
    int trial = 0;
    std::uint64_t seed = 0;
    bool censored = false;
    AnalysisReport report;
};

/// Rotates pi so the part with the largest |H_i| becomes part 1 (the
/// paper's WLOG); ties prefer the smaller part index.
inline Partition3 rotate_largest_h1(const Hypergraph3& h, const Partition3& pi) {
    std::array<std::int64_t, 3> hi{0, 0, 0};
    for (const Edge3& e : h.edges()) {
        std::array<int, 4> cnt{};
        for (Vertex v : e) cnt[static_cast<std::size_t>(pi.part(v))]++;
        for (int part = 1; part <= 3; ++part)
            if (cnt[static_cast<std::size_t>(part)] >= 2) hi[static_cast<std::size_t>(part - 1)]++;
    }
    int first = 0;
    for (int i = 1; i < 3; ++i)
        if (hi[static_cast<std::size_t>(i)] > hi[static_cast<std::size_t>(first)]) first = i;
    const int second = first == 0 ? 1 : 0;
    const int third = 3 - first - second;
    return pi.relabeled(first + 1, second + 1, third + 1);
}

inline AuditTrial run_audit_trial(const ExperimentConfig& cfg, int n, std::size_t c_index, int trial) {
    AuditTrial rec;
    rec.n = n;
    rec.c = cfg.c_list[c_index];
    rec.p = schedule_p(PSchedule{schedule_kind_from_string(cfg.schedule), rec.c}, n);
    rec.trial = trial;
    rec.seed = derive_trial_seed(Seed{cfg.seed}, static_cast<std::uint64_t>(n), c_index,
                                 static_cast<std::uint64_t>(trial))
                   .value;
    try {
        if (cfg.fixture == "sn") {
            auto [g, pi] = balanced_tripartite(n);
            rec.report = audit_propositions(g, g, pi, cfg.constants, rec.p, cfg.partition_budget);
            return rec;
        }
        const Hypergraph3 g = sample_g3(n, rec.p, Seed{rec.seed});
        const SolveResult res = max_f5_free(g, SolveMode::Exact, false, cfg.enum_cap, cfg.node_budget);
        const Hypergraph3 h = Hypergraph3::build(n, res.witness);
        const Partition3 pi = rotate_largest_h1(h, best_partition_for(h, PartitionMode::Exact, cfg.partition_budget).pi);
        rec.report = audit_propositions(g, h, pi, cfg.constants, rec.p, cfg.partition_budget);
    } catch (const budget_error&) {
        rec.censored = true;
    }
    return rec;
}

inline std::vector<AuditTrial> run_audit(const ExperimentConfig& cfg, std::ostream& jsonl, bool* any_censored = nullptr) {
    cfg.validate();
    struct Point {
        int n;
        std::size_t ci;
        int trial;
    };
    std::vector<Point> points;
    for (int n : cfg.n_list)
        for (std::size_t ci = 0; ci < cfg.c_list.size(); ++ci)
            for (int t = 0; t < cfg.trials; ++t) points.push_back({n, ci, t});
    std::vector<AuditTrial> records(points.size());
    detail::parallel_for(cfg.workers, static_cast<int>(points.size()), [&](int i) {
        const Point& pt = points[static_cast<std::size_t>(i)];
        records[static_cast<std::size_t>(i)] = run_audit_trial(cfg, pt.n, pt.ci, pt.trial);
    });
    for (const AuditTrial& rec : records) {
        ordered_json j;
        j["kind"] = "audit";
        j["n"] = rec.n;
        j["c"] = rec.c;
        j["p"] = rec.p;
        j["trial"] = rec.trial;
        j["master_seed"] = cfg.seed;
        j["seed"] = rec.seed;
        j["censored"] = rec.censored;
        if (!rec.censored) j["report"] = analysis_report_to_json(rec.report);
        jsonl << j.dump() << '\n';
    }
    if (any_censored) {
        *any_censored = false;
        for (const AuditTrial& rec : records)
            if (rec.censored) *any_censored = true;
    }
    return records;
}

// ---------------------------------------------------------------------------
// Bound verification

inline void bound_report_to_csv(const BoundReport& rep, std::ostream& os) {
    os << rep.claim_id << ',' << detail::fmt_double(rep.n) << ',' << detail::fmt_double(rep.bigC) << ','
       << detail::fmt_double(rep.s) << ',' << detail::fmt_double(rep.r) << ',' << detail::fmt_double(rep.i) << ','
       << detail::fmt_double(rep.ln_g_value) << ',' << detail::fmt_double(rep.margin) << ',' << (rep.holds ? 1 : 0)
       << ',' << rep.flags << '\n';
}

/// Constants section, claim grid, and the smallest passing C per claim.
inline std::vector<BoundReport> run_bounds(const ExperimentConfig& cfg, std::ostream& csv) {
    csv << "claim_id,n,C,s,r,i,ln_g,margin,holds,flags\n";
    int ordinal = 0;
    for (const ConstraintReport& c : check_constants(cfg.constants)) {
        BoundReport rep;
        rep.claim_id = "constants";
        rep.s = ++ordinal;
        rep.ln_g_value = c.lhs;
        rep.margin = c.rhs;
        rep.holds = c.holds;
        rep.flags = c.name;
        bound_report_to_csv(rep, csv);
    }
    const std::vector<BoundReport> grid = check_all_claims(cfg.bound_n, cfg.bigC, cfg.constants, cfg.grid_points);
    for (const BoundReport& rep : grid) bound_report_to_csv(rep, csv);
    for (ClaimId id : all_claims()) {
        const auto min_c = min_passing_bigC(id, cfg.bound_n, cfg.constants, {10.0, 100.0, 1000.0, 10000.0},
                                            cfg.grid_points);
        BoundReport rep;
        rep.claim_id = "min_passing_C";
        rep.s = min_c.value_or(-1.0);
        rep.holds = min_c.has_value();
        rep.flags = to_string(id);
        bound_report_to_csv(rep, csv);
    }
    return grid;
}

// ---------------------------------------------------------------------------
// Output file handling

/// Opens an output file; refuses to overwrite unless forced.
inline std::ofstream open_output(const std::string& path, bool force) {
    if (!force) {
        std::ifstream probe(path);
        if (probe.good()) throw config_error("output file exists (use --force to overwrite): " + path);
    }
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw config_error("cannot open output file: " + path);
    return out;
}

}  // namespace f5lab

// f5lab command line: seeded experiment campaigns plus single-instance
// solve/verify. Subcommands: sweep, census, audit, bounds, solve, verify.
// Exit codes: 0 success, 2 config error, 3 budget-censored completion.

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "f5lab/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitCensored = 3;

f5lab::ExperimentConfig load_config(const std::string& config_path) {
    if (config_path.empty()) return f5lab::ExperimentConfig{};
    std::ifstream in(config_path);
    if (!in) throw f5lab::config_error("cannot open config file: " + config_path);
    nlohmann::json j;
    in >> j;
    return f5lab::ExperimentConfig::from_json(j);
}

struct ExperimentFlags {
    std::string config_path;
    std::vector<int> n_list;
    std::vector<double> c_list;
    int trials = -1;
    std::int64_t seed = -1;
    std::int64_t budget = -1;
    std::int64_t enum_cap = -1;
    int workers = -1;
    std::string schedule, out, fixture;
    bool force = false, timings = false;
};

void add_experiment_flags(CLI::App* cmd, ExperimentFlags& f) {
    cmd->add_option("--config", f.config_path, "JSON config file");
    cmd->add_option("--n", f.n_list, "vertex counts");
    cmd->add_option("--c", f.c_list, "schedule coefficients");
    cmd->add_option("--trials", f.trials, "trials per (n, c) point");
    cmd->add_option("--seed", f.seed, "master seed");
    cmd->add_option("--budget", f.budget, "solver node budget");
    cmd->add_option("--enum-cap", f.enum_cap, "all-optima cap");
    cmd->add_option("--workers", f.workers, "worker threads (1 = byte-deterministic witness order)");
    cmd->add_option("--schedule", f.schedule, "p schedule: sqrt_log | log | constant");
    cmd->add_option("--out", f.out, "output path");
    cmd->add_option("--fixture", f.fixture, "audit fixture: sn uses G = H = S(n)");
    cmd->add_flag("--force", f.force, "overwrite existing output");
    cmd->add_flag("--timings", f.timings, "emit wall times (breaks byte-determinism)");
}

f5lab::ExperimentConfig merge(const ExperimentFlags& f, const std::string& kind) {
    f5lab::ExperimentConfig cfg = load_config(f.config_path);
    cfg.kind = kind;
    if (!f.n_list.empty()) cfg.n_list = f.n_list;
    if (!f.c_list.empty()) cfg.c_list = f.c_list;
    if (f.trials >= 0) cfg.trials = f.trials;
    if (f.seed >= 0) cfg.seed = static_cast<std::uint64_t>(f.seed);
    if (f.budget >= 0) cfg.node_budget = f.budget;
    if (f.enum_cap >= 0) cfg.enum_cap = f.enum_cap;
    if (f.workers >= 0) cfg.workers = f.workers;
    if (!f.schedule.empty()) cfg.schedule = f.schedule;
    if (!f.out.empty()) cfg.out = f.out;
    if (!f.fixture.empty()) cfg.fixture = f.fixture;
    cfg.force = cfg.force || f.force;
    cfg.timings = cfg.timings || f.timings;
    if (cfg.out.empty()) throw f5lab::config_error("an output path is required (--out)");
    return cfg;
}

f5lab::Hypergraph3 read_hypergraph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw f5lab::config_error("cannot open hypergraph file: " + path);
    return f5lab::Hypergraph3::read(in);
}

nlohmann::ordered_json edges_to_json(const std::vector<f5lab::Edge3>& edges) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& e : edges) arr.push_back({e[0], e[1], e[2]});
    return arr;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"f5lab: random Turán laboratory for the generalized triangle"};
    app.require_subcommand(1);

    ExperimentFlags sweep_flags, census_flags, audit_flags, bounds_flags;
    auto* sweep = app.add_subcommand("sweep", "threshold sweep: exact solve + tripartiteness event per trial");
    add_experiment_flags(sweep, sweep_flags);
    auto* census = app.add_subcommand("census", "degree/codegree concentration census");
    add_experiment_flags(census, census_flags);
    auto* audit = app.add_subcommand("audit", "per-instance proposition/lemma margin audit");
    add_experiment_flags(audit, audit_flags);
    auto* bounds = app.add_subcommand("bounds", "constant constraints and appendix-claim margins");
    add_experiment_flags(bounds, bounds_flags);

    std::string solve_in, solve_mode = "exact", solve_out;
    std::int64_t solve_budget = 5000000, solve_cap = 1000000;
    bool solve_enumerate = false, solve_force = false;
    auto* solve = app.add_subcommand("solve", "maximum/maximal F5-free subset of a hypergraph file");
    solve->add_option("--in", solve_in, "hypergraph file (\"n m\" then edge lines)")->required();
    solve->add_option("--mode", solve_mode, "exact | greedy");
    solve->add_option("--budget", solve_budget, "node budget for exact mode");
    solve->add_option("--cap", solve_cap, "all-optima cap");
    solve->add_flag("--enumerate", solve_enumerate, "collect all optima");
    solve->add_option("--out", solve_out, "write result JSON here instead of stdout");
    solve->add_flag("--force", solve_force, "overwrite existing output");

    std::string verify_in;
    auto* verify = app.add_subcommand("verify", "freeness and tripartiteness of a hypergraph file");
    verify->add_option("--in", verify_in, "hypergraph file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (sweep->parsed()) {
            const auto cfg = merge(sweep_flags, "sweep");
            auto jsonl = f5lab::open_output(cfg.out, cfg.force);
            auto agg = f5lab::open_output(cfg.out + ".agg.csv", cfg.force);
            bool censored = false;
            f5lab::run_threshold_sweep(cfg, jsonl, agg, &censored);
            return censored ? kExitCensored : kExitOk;
        }
        if (census->parsed()) {
            const auto cfg = merge(census_flags, "census");
            auto csv = f5lab::open_output(cfg.out, cfg.force);
            f5lab::run_census(cfg, csv);
            return kExitOk;
        }
        if (audit->parsed()) {
            const auto cfg = merge(audit_flags, "audit");
            auto jsonl = f5lab::open_output(cfg.out, cfg.force);
            bool censored = false;
            f5lab::run_audit(cfg, jsonl, &censored);
            return censored ? kExitCensored : kExitOk;
        }
        if (bounds->parsed()) {
            const auto cfg = merge(bounds_flags, "bounds");
            auto csv = f5lab::open_output(cfg.out, cfg.force);
            f5lab::run_bounds(cfg, csv);
            return kExitOk;
        }
        if (solve->parsed()) {
            const auto g = read_hypergraph(solve_in);
            nlohmann::ordered_json j;
            int exit_code = kExitOk;
            try {
                const auto mode = solve_mode == "greedy" ? f5lab::SolveMode::Greedy : f5lab::SolveMode::Exact;
                if (solve_mode != "greedy" && solve_mode != "exact")
                    throw f5lab::config_error("--mode must be exact or greedy");
                const auto res = f5lab::max_f5_free(g, mode, solve_enumerate, solve_cap, solve_budget);
                j["n"] = g.vertex_count();
                j["m"] = g.edge_count();
                j["mode"] = solve_mode;
                j["optimum"] = res.optimum;
                j["exact"] = res.exact;
                j["witness"] = edges_to_json(res.witness);
                if (res.all_optima) {
                    j["n_optima"] = res.all_optima->size();
                    j["truncated"] = res.truncated;
                    auto arr = nlohmann::ordered_json::array();
                    for (const auto& opt : *res.all_optima) arr.push_back(edges_to_json(opt));
                    j["all_optima"] = arr;
                }
                j["nodes"] = res.stats.nodes;
            } catch (const f5lab::budget_error& e) {
                j["censored"] = true;
                j["error"] = e.what();
                exit_code = kExitCensored;
            }
            if (solve_out.empty()) {
                std::cout << j.dump(2) << '\n';
            } else {
                auto out = f5lab::open_output(solve_out, solve_force);
                out << j.dump(2) << '\n';
            }
            return exit_code;
        }
        if (verify->parsed()) {
            const auto g = read_hypergraph(verify_in);
            nlohmann::ordered_json j;
            j["n"] = g.vertex_count();
            j["m"] = g.edge_count();
            const auto copy = f5lab::find_f5(g);
            j["f5_free"] = !copy.has_value();
            if (copy) {
                j["f5_witness"] = {
                    {"pair_edge1", {copy->pair_edge1[0], copy->pair_edge1[1], copy->pair_edge1[2]}},
                    {"pair_edge2", {copy->pair_edge2[0], copy->pair_edge2[1], copy->pair_edge2[2]}},
                    {"base_edge", {copy->base_edge[0], copy->base_edge[1], copy->base_edge[2]}},
                };
            }
            j["f5_count"] = f5lab::count_f5(g);
            j["k4minus_count"] = f5lab::count_k4minus(g);
            const auto cert = f5lab::is_tripartite(g);
            j["tripartite"] = cert.has_value();
            if (cert) {
                auto arr = nlohmann::ordered_json::array();
                for (f5lab::Vertex v = 0; v < g.vertex_count(); ++v) arr.push_back(cert->part(v));
                j["certificate"] = arr;
            }
            std::cout << j.dump(2) << '\n';
            return kExitOk;
        }
    } catch (const f5lab::config_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return kExitOk;
}

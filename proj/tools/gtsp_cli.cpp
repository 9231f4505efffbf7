// Command-line front end: gen, solve, episode, metrics, ablation, bench.

#include "gtsp/bench.hpp"
#include "gtsp/errors.hpp"
#include "gtsp/exact_solver.hpp"
#include "gtsp/instance.hpp"
#include "gtsp/metrics.hpp"
#include "gtsp/sim.hpp"
#include "gtsp/sts_solver.hpp"
#include "gtsp/synthetic.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace gtsp;

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ConfigError("cannot write " + path);
    out << text;
}

nlohmann::json read_config(const std::string& path) {
    if (path.empty())
        return nlohmann::json::object();
    try {
        return nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("malformed config " + path + ": " + e.what());
    }
}

std::string csv_num(double v) {
    return std::isnan(v) ? "nan" : fmt::format("{:.10g}", v);
}

struct GenOptions {
    std::string out_dir = "instances";
    int count = 1;
    std::uint64_t seed = 0;
    GenParams gen;
    SolverParams params;
};

struct SolveOptions {
    std::string instance;
    std::string solver = "sts";
    std::optional<int> H;
    std::optional<int> k;
};

struct EpisodeOptions {
    std::string policy = "sts";
    std::uint64_t seed = 0;
    int max_attempts = 100;
    std::string out;
    WorldParams world;
    MpcConfig mpc;
};

struct MetricsOptions {
    std::vector<std::string> logs;
    double beta = kDefaultBeta;
    double pick_time = 1.0;
    double tc_time = 3.0;
    std::string out;
};

struct AblationOptions {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<int> instances;
    std::optional<int> threads;
    std::vector<int> n_tools;
    std::vector<int> horizons;
    std::vector<int> ks;
    std::string out;
    std::string timing_out;
};

struct BenchOptions {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<int> episodes;
    std::optional<int> threads;
    std::vector<std::string> policies;
    std::string out;
};

void run_gen(const GenOptions& o) {
    if (o.count < 1)
        throw ConfigError("--count must be at least 1");
    fs::create_directories(o.out_dir);
    for (int i = 0; i < o.count; ++i) {
        GenParams gp = o.gen;
        gp.seed = derive_seed(o.seed, static_cast<std::uint64_t>(i));
        const ProblemInstance inst = sample_instance(gp, o.params);
        inst.validate();
        save_instance(inst, fs::path(o.out_dir) / fmt::format("instance_{:04d}.json", i));
    }
}

void run_solve(const SolveOptions& o) {
    ProblemInstance inst = load_instance(o.instance);
    if (o.H)
        inst.params.H = *o.H;
    if (o.k)
        inst.params.k = *o.k;
    inst.validate();

    SolveReport report;
    report.solver = o.solver;
    const auto start = std::chrono::steady_clock::now();
    if (o.solver == "exact") {
        const ExactResult r = solve_exact_detailed(inst.state(), inst.params.H, inst.params.reward());
        report.plan = r.plan;
        report.nodes_expanded = r.nodes_expanded;
    } else if (o.solver == "sts") {
        const StsResult r =
            sts_detailed(inst.state(), StsConfig{inst.params.H, inst.params.k, inst.params.reward()});
        report.plan = r.plan;
        report.nodes_expanded = r.nodes_expanded;
        report.k = inst.params.k;
    } else {
        throw ConfigError("unknown solver '" + o.solver + "' (expected exact or sts)");
    }
    report.solve_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    std::cout << plan_to_json(report).dump(2) << '\n';
}

void run_episode_cmd(const EpisodeOptions& o) {
    const PolicyKind policy = parse_policy(o.policy);
    const EpisodeLog log =
        run_episode(BinWorld::sample(o.world, o.seed), policy, o.mpc, o.max_attempts, o.seed);
    write_output(o.out, format_episode_log(log));
}

void run_metrics(const MetricsOptions& o) {
    std::string csv = "tc,pa,ps,psr,tcr,tc_score,ps_per_hr\n";
    for (const auto& path : o.logs) {
        const EventCounts c = parse_event_log(read_event_symbols(read_file(path)));
        if (c.pa == 0) {
            std::cerr << "warning: " << path << " has no pick attempts\n";
            csv += fmt::format("{},{},{},nan,nan,nan,nan\n", c.tc, c.pa, c.ps);
            continue;
        }
        const Rates r = psr_tcr(c);
        csv += fmt::format("{},{},{},{},{},{},{}\n", c.tc, c.pa, c.ps, csv_num(r.psr),
                           csv_num(r.tcr), csv_num(beta_tc_score(c, o.beta)),
                           csv_num(throughput(c, o.pick_time, o.tc_time)));
    }
    write_output(o.out, csv);
}

void run_ablation_cmd(const AblationOptions& o) {
    AblationConfig cfg = read_config(o.config).get<AblationConfig>();
    if (o.seed)
        cfg.seed = *o.seed;
    if (o.instances)
        cfg.instances = *o.instances;
    if (o.threads)
        cfg.threads = *o.threads;
    if (!o.n_tools.empty())
        cfg.n_tools = o.n_tools;
    if (!o.horizons.empty())
        cfg.horizons = o.horizons;
    if (!o.ks.empty())
        cfg.ks = o.ks;

    const auto rows = run_ablation(cfg);
    write_output(o.out, ablation_csv(rows));
    if (o.timing_out.empty())
        std::cerr << ablation_timing_csv(rows);
    else
        write_output(o.timing_out, ablation_timing_csv(rows));
}

void run_bench_cmd(const BenchOptions& o) {
    PolicyBenchConfig cfg = read_config(o.config).get<PolicyBenchConfig>();
    if (o.seed)
        cfg.seed = *o.seed;
    if (o.episodes)
        cfg.episodes = *o.episodes;
    if (o.threads)
        cfg.threads = *o.threads;
    if (!o.policies.empty()) {
        cfg.policies.clear();
        for (const auto& p : o.policies)
            cfg.policies.push_back(parse_policy(p));
    }
    write_output(o.out, policy_bench_csv(run_policy_bench(cfg)));
}

void add_world_flags(CLI::App* cmd, WorldParams& w) {
    cmd->add_option("--grid-h", w.dims.h, "grid height in cells");
    cmd->add_option("--grid-w", w.dims.w, "grid width in cells");
    cmd->add_option("--objects", w.objects, "objects in the bin");
    cmd->add_option("--tools", w.n_tools, "number of end-effectors");
    cmd->add_option("--top-m", w.top_m, "observed proposals per tool");
    cmd->add_option("--sigma-scale", w.sigma_scale, "bump width scale in cells");
    cmd->add_option("--p-disturb", w.p_disturb, "chance a failed grasp moves an object");
    cmd->add_option("--jitter-radius", w.jitter_radius, "max object displacement in cells");
    cmd->add_option("--pick-time", w.pick_time, "seconds per pick attempt");
    cmd->add_option("--tc-time", w.tool_change_time, "seconds per tool change");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Grasp tool selection planning toolkit"};
    app.require_subcommand(1);

    GenOptions gen;
    auto* gen_cmd = app.add_subcommand("gen", "write synthetic problem instances");
    gen_cmd->add_option("--out", gen.out_dir, "output directory");
    gen_cmd->add_option("--count", gen.count, "number of instances");
    gen_cmd->add_option("--seed", gen.seed, "base seed");
    gen_cmd->add_option("--grid-h", gen.gen.dims.h, "grid height");
    gen_cmd->add_option("--grid-w", gen.gen.dims.w, "grid width");
    gen_cmd->add_option("--centers", gen.gen.m, "object centers per instance");
    gen_cmd->add_option("--tools", gen.gen.n_tools, "number of end-effectors");
    gen_cmd->add_option("--top-m", gen.gen.top_m, "proposals per tool");
    gen_cmd->add_option("--sigma-scale", gen.gen.sigma_scale, "bump width scale in cells");
    gen_cmd->add_option("--H", gen.params.H, "horizon");
    gen_cmd->add_option("--c", gen.params.c, "tool-change cost (< 0)");
    gen_cmd->add_option("--l", gen.params.l, "void radius");
    gen_cmd->add_option("--k", gen.params.k, "sparsity factor");

    SolveOptions solve;
    auto* solve_cmd = app.add_subcommand("solve", "solve one instance and print the plan");
    solve_cmd->add_option("instance", solve.instance, "instance file")->required();
    solve_cmd->add_option("--solver", solve.solver, "exact or sts");
    solve_cmd->add_option("--H", solve.H, "override the instance horizon");
    solve_cmd->add_option("--k", solve.k, "override the instance sparsity factor");

    EpisodeOptions episode;
    auto* episode_cmd = app.add_subcommand("episode", "simulate one closed-loop episode");
    episode_cmd->add_option("--solver", episode.policy,
                            "randomized, naive-greedy, greedy, sts or exact");
    episode_cmd->add_option("--H", episode.mpc.H, "planning horizon");
    episode_cmd->add_option("--k", episode.mpc.k, "sparsity factor");
    episode_cmd->add_option("--c", episode.mpc.params.c, "tool-change cost (< 0)");
    episode_cmd->add_option("--l", episode.mpc.params.l, "void radius");
    episode_cmd->add_option("--seed", episode.seed, "episode seed");
    episode_cmd->add_option("--max-attempts", episode.max_attempts, "pick attempt budget");
    episode_cmd->add_option("--out", episode.out, "log file (stdout if omitted)");
    add_world_flags(episode_cmd, episode.world);

    MetricsOptions metrics;
    auto* metrics_cmd = app.add_subcommand("metrics", "score episode logs");
    metrics_cmd->add_option("logs", metrics.logs, "episode log files")->required();
    metrics_cmd->add_option("--beta", metrics.beta, "beta of the TC-score");
    metrics_cmd->add_option("--pick-time", metrics.pick_time, "seconds per pick attempt");
    metrics_cmd->add_option("--tc-time", metrics.tc_time, "seconds per tool change");
    metrics_cmd->add_option("--out", metrics.out, "CSV file (stdout if omitted)");

    AblationOptions ablation;
    auto* ablation_cmd = app.add_subcommand("ablation", "exact vs. STS grid study");
    ablation_cmd->add_option("--config", ablation.config, "JSON config file");
    ablation_cmd->add_option("--seed", ablation.seed, "base seed");
    ablation_cmd->add_option("--instances", ablation.instances, "instances per cell");
    ablation_cmd->add_option("--threads", ablation.threads, "worker threads");
    ablation_cmd->add_option("--n-tools", ablation.n_tools, "end-effector counts")->delimiter(',');
    ablation_cmd->add_option("--horizons", ablation.horizons, "horizons")->delimiter(',');
    ablation_cmd->add_option("--ks", ablation.ks, "sparsity factors")->delimiter(',');
    ablation_cmd->add_option("--out", ablation.out, "CSV file (stdout if omitted)");
    ablation_cmd->add_option("--timing-out", ablation.timing_out,
                             "timing CSV file (stderr if omitted)");

    BenchOptions bench;
    auto* bench_cmd = app.add_subcommand("bench", "paired policy comparison in simulation");
    bench_cmd->add_option("--config", bench.config, "JSON config file");
    bench_cmd->add_option("--seed", bench.seed, "base seed");
    bench_cmd->add_option("--episodes", bench.episodes, "episodes per policy");
    bench_cmd->add_option("--threads", bench.threads, "worker threads");
    bench_cmd->add_option("--policies", bench.policies, "policies to compare")->delimiter(',');
    bench_cmd->add_option("--out", bench.out, "CSV file (stdout if omitted)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen_cmd->parsed())
            run_gen(gen);
        else if (solve_cmd->parsed())
            run_solve(solve);
        else if (episode_cmd->parsed())
            run_episode_cmd(episode);
        else if (metrics_cmd->parsed())
            run_metrics(metrics);
        else if (ablation_cmd->parsed())
            run_ablation_cmd(ablation);
        else if (bench_cmd->parsed())
            run_bench_cmd(bench);
    } catch (const Infeasible& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

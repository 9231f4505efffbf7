#pragma once

#include "gtsp/metrics.hpp"
#include "gtsp/sim.hpp"
#include "gtsp/synthetic.hpp"

#include <json.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace gtsp {

/// Nearest-rank percentiles: for quantile q the ceil(q * n)-th smallest
/// value (the smallest for q = 0). Throws EmptyInput on empty `values`.
std::vector<double> percentiles(std::span<const double> values, std::span<const double> qs);

/// Grid study of exact solver vs. sparse tree search on synthetic instances.
struct AblationConfig {
    std::vector<int> n_tools{2, 3};
    std::vector<int> horizons{2, 3, 4};
    std::vector<int> ks{1, 2, 3};
    int instances = 100;
    std::uint64_t seed = 0;
    GenParams gen;      ///< n_tools and seed are overridden per instance
    double c = -0.2;
    double l = 20.0;
    int threads = 1;

    void validate() const;
};

void from_json(const nlohmann::json& j, AblationConfig& cfg);

struct AblationRow {
    int n_tools = 0;
    int H = 0;
    int k = 0;
    int instances = 0;
    int compared = 0;        ///< instances entering the advantage statistics
    int infeasible_count = 0; ///< exact infeasible or STS plan shorter than H
    double adv_mean = 0.0;
    double adv_p25 = 0.0;
    double adv_p75 = 0.0;
    double adv_max = 0.0;
    double nodes_exact_median = 0.0;
    double nodes_sts_median = 0.0;
    double t_exact_median_ms = 0.0;
    double t_sts_median_ms = 0.0;
};

/// Instance i of an n_tools group uses seed derive_seed(derive_seed(seed,
/// n_tools), i), so every (H, k) cell of that group sees the same instances.
/// Exact and STS are timed around the solver call only, alternating which
/// runs first. Rows are sorted by (n_tools, H, k).
std::vector<AblationRow> run_ablation(const AblationConfig& cfg);

/// Deterministic columns only; identical config and seed give identical bytes.
std::string ablation_csv(std::span<const AblationRow> rows);

/// Wall-clock medians, kept apart from the deterministic table.
std::string ablation_timing_csv(std::span<const AblationRow> rows);

/// Paired comparison of policies on seeded simulated episodes.
struct PolicyBenchConfig {
    std::vector<PolicyKind> policies{PolicyKind::Randomized, PolicyKind::NaiveGreedy,
                                     PolicyKind::Greedy, PolicyKind::Sts};
    int episodes = 50;
    int max_attempts = 100;
    std::uint64_t seed = 0;
    double beta = kDefaultBeta;
    WorldParams world;
    MpcConfig mpc;
    int threads = 1;

    void validate() const;
};

void from_json(const nlohmann::json& j, PolicyBenchConfig& cfg);

struct PolicyRow {
    std::string policy;
    int episodes = 0;
    EventCounts totals;
    double tc_score = 0.0;      ///< beta-TC-score of the summed counts
    double mean_tc_score = 0.0; ///< mean of per-episode scores
    double ps_per_hr = 0.0;
    int no_attempt_episodes = 0;
};

/// Episode e of every policy runs on BinWorld::sample(world, derive_seed(seed, e))
/// with the same episode seed. Rows follow the order of cfg.policies.
std::vector<PolicyRow> run_policy_bench(const PolicyBenchConfig& cfg);

std::string policy_bench_csv(std::span<const PolicyRow> rows);

} // namespace gtsp

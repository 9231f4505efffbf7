#include "gtsp/bench.hpp"

#include "gtsp/errors.hpp"
#include "gtsp/exact_solver.hpp"
#include "gtsp/sts_solver.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <thread>
#include <tuple>

namespace gtsp {

namespace {

using Clock = std::chrono::steady_clock;

// Runs body(i) for i in [0, n) on up to `threads` workers.
void parallel_for(int n, int threads, const std::function<void(int)>& body) {
    threads = std::clamp(threads, 1, std::max(1, n));
    if (threads == 1) {
        for (int i = 0; i < n; ++i)
            body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::jthread> workers;
    for (int t = 0; t < threads; ++t) {
        workers.emplace_back([&] {
            for (int i = next++; i < n; i = next++)
                body(i);
        });
    }
}

double median(std::vector<double> values) {
    if (values.empty())
        return std::numeric_limits<double>::quiet_NaN();
    const double q = 0.5;
    return percentiles(values, std::span<const double>(&q, 1)).front();
}

std::string num(double v) {
    if (std::isnan(v))
        return "nan";
    return fmt::format("{:.10g}", v);
}

template <class Fn>
double time_ms(Fn&& fn) {
    const auto start = Clock::now();
    fn();
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct ExactOutcome {
    bool feasible = false;
    double value = 0.0;
    double ms = 0.0;
    double nodes = 0.0;
};

struct StsOutcome {
    bool full_depth = false;
    double value = 0.0;
    double ms = 0.0;
    double nodes = 0.0;
};

ExactOutcome timed_exact(const PlanState& s, int H, const RewardParams& params) {
    ExactOutcome out;
    out.ms = time_ms([&] {
        try {
            const ExactResult r = solve_exact_detailed(s, H, params);
            out.feasible = true;
            out.value = r.plan.value;
            out.nodes = static_cast<double>(r.nodes_expanded);
        } catch (const Infeasible&) {
        }
    });
    return out;
}

StsOutcome timed_sts(const PlanState& s, const StsConfig& cfg) {
    StsOutcome out;
    out.ms = time_ms([&] {
        const StsResult r = sts_detailed(s, cfg);
        out.full_depth = static_cast<int>(r.plan.steps.size()) == cfg.H;
        out.value = r.plan.value;
        out.nodes = static_cast<double>(r.nodes_expanded);
    });
    return out;
}

template <class T>
std::vector<T> json_list(const nlohmann::json& j, const char* key, std::vector<T> fallback) {
    return j.contains(key) ? j.at(key).get<std::vector<T>>() : std::move(fallback);
}

} // namespace

std::vector<double> percentiles(std::span<const double> values, std::span<const double> qs) {
    if (values.empty())
        throw EmptyInput("percentiles of an empty list");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const auto n = sorted.size();
    std::vector<double> out;
    out.reserve(qs.size());
    for (double q : qs) {
        if (!(q >= 0.0 && q <= 1.0))
            throw ConfigError("quantile must lie in [0, 1]");
        auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n)));
        rank = std::clamp<std::size_t>(rank, 1, n);
        out.push_back(sorted[rank - 1]);
    }
    return out;
}

void AblationConfig::validate() const {
    if (n_tools.empty() || horizons.empty() || ks.empty())
        throw ConfigError("ablation grid must list n_tools, horizons and ks");
    if (std::any_of(n_tools.begin(), n_tools.end(), [](int v) { return v < 1; }))
        throw ConfigError("n_tools entries must be at least 1");
    if (std::any_of(horizons.begin(), horizons.end(), [](int v) { return v < 1; }))
        throw ConfigError("horizon entries must be at least 1");
    if (std::any_of(ks.begin(), ks.end(), [](int v) { return v < 1; }))
        throw ConfigError("k entries must be at least 1");
    if (instances < 1)
        throw ConfigError("instance count must be at least 1");
    if (threads < 1)
        throw ConfigError("threads must be at least 1");
    RewardParams{c, l}.validate();
    GenParams probe = gen;
    probe.n_tools = 1;
    probe.validate();
}

void from_json(const nlohmann::json& j, AblationConfig& cfg) {
    cfg.n_tools = json_list(j, "n_tools", cfg.n_tools);
    cfg.horizons = json_list(j, "horizons", cfg.horizons);
    cfg.ks = json_list(j, "ks", cfg.ks);
    cfg.instances = j.value("instances", cfg.instances);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.c = j.value("c", cfg.c);
    cfg.l = j.value("l", cfg.l);
    cfg.threads = j.value("threads", cfg.threads);
    cfg.gen.dims.h = j.value("grid_h", cfg.gen.dims.h);
    cfg.gen.dims.w = j.value("grid_w", cfg.gen.dims.w);
    cfg.gen.m = j.value("m", cfg.gen.m);
    cfg.gen.top_m = j.value("top_m", cfg.gen.top_m);
    cfg.gen.sigma_scale = j.value("sigma_scale", cfg.gen.sigma_scale);
}

std::vector<AblationRow> run_ablation(const AblationConfig& cfg) {
    cfg.validate();
    const RewardParams params{cfg.c, cfg.l};

    std::vector<int> tools = cfg.n_tools;
    std::vector<int> horizons = cfg.horizons;
    std::vector<int> ks = cfg.ks;
    for (auto* v : {&tools, &horizons, &ks}) {
        std::sort(v->begin(), v->end());
        v->erase(std::unique(v->begin(), v->end()), v->end());
    }

    std::vector<AblationRow> rows;
    for (int nt : tools) {
        const std::uint64_t group_seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(nt));
        std::vector<PlanState> states(static_cast<std::size_t>(cfg.instances));
        for (int i = 0; i < cfg.instances; ++i) {
            GenParams gp = cfg.gen;
            gp.n_tools = nt;
            gp.seed = derive_seed(group_seed, static_cast<std::uint64_t>(i));
            states[static_cast<std::size_t>(i)] = sample_instance(gp, SolverParams{}).state();
        }

        for (int H : horizons) {
            // exact[i] and sts[i][ki] for every instance
            std::vector<ExactOutcome> exact(states.size());
            std::vector<std::vector<StsOutcome>> approx(states.size(),
                                                        std::vector<StsOutcome>(ks.size()));
            parallel_for(cfg.instances, cfg.threads, [&](int i) {
                const auto& s = states[static_cast<std::size_t>(i)];
                auto& e = exact[static_cast<std::size_t>(i)];
                auto& a = approx[static_cast<std::size_t>(i)];
                const bool exact_first = i % 2 == 0;
                if (exact_first)
                    e = timed_exact(s, H, params);
                for (std::size_t ki = 0; ki < ks.size(); ++ki)
                    a[ki] = timed_sts(s, StsConfig{H, ks[ki], params});
                if (!exact_first)
                    e = timed_exact(s, H, params);
            });

            std::vector<double> exact_ms;
            std::vector<double> exact_nodes;
            for (const auto& e : exact) {
                exact_ms.push_back(e.ms);
                exact_nodes.push_back(e.nodes);
            }

            for (std::size_t ki = 0; ki < ks.size(); ++ki) {
                AblationRow row;
                row.n_tools = nt;
                row.H = H;
                row.k = ks[ki];
                row.instances = cfg.instances;

                std::vector<double> adv;
                std::vector<double> sts_ms;
                std::vector<double> sts_nodes;
                for (std::size_t i = 0; i < states.size(); ++i) {
                    const auto& a = approx[i][ki];
                    sts_ms.push_back(a.ms);
                    sts_nodes.push_back(a.nodes);
                    if (!exact[i].feasible || !a.full_depth) {
                        ++row.infeasible_count;
                        continue;
                    }
                    adv.push_back(advantage(exact[i].value, a.value));
                }
                row.compared = static_cast<int>(adv.size());
                if (adv.empty()) {
                    row.adv_mean = row.adv_p25 = row.adv_p75 = row.adv_max =
                        std::numeric_limits<double>::quiet_NaN();
                } else {
                    row.adv_mean = std::accumulate(adv.begin(), adv.end(), 0.0) /
                                   static_cast<double>(adv.size());
                    const double qs[] = {0.25, 0.75, 1.0};
                    const auto p = percentiles(adv, qs);
                    row.adv_p25 = p[0];
                    row.adv_p75 = p[1];
                    row.adv_max = p[2];
                }
                row.nodes_exact_median = median(exact_nodes);
                row.nodes_sts_median = median(sts_nodes);
                row.t_exact_median_ms = median(exact_ms);
                row.t_sts_median_ms = median(sts_ms);
                rows.push_back(row);
            }
        }
    }

    std::sort(rows.begin(), rows.end(), [](const AblationRow& a, const AblationRow& b) {
        return std::tie(a.n_tools, a.H, a.k) < std::tie(b.n_tools, b.H, b.k);
    });
    return rows;
}

std::string ablation_csv(std::span<const AblationRow> rows) {
    std::string out = "n_tools,H,k,instances,compared,adv_mean,adv_p25,adv_p75,adv_max,"
                      "nodes_exact_median,nodes_sts_median,infeasible_count\n";
    for (const auto& r : rows) {
        out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{}\n", r.n_tools, r.H, r.k,
                           r.instances, r.compared, num(r.adv_mean), num(r.adv_p25),
                           num(r.adv_p75), num(r.adv_max), num(r.nodes_exact_median),
                           num(r.nodes_sts_median), r.infeasible_count);
    }
    return out;
}

std::string ablation_timing_csv(std::span<const AblationRow> rows) {
    std::string out = "n_tools,H,k,t_exact_median_ms,t_sts_median_ms\n";
    for (const auto& r : rows) {
        out += fmt::format("{},{},{},{},{}\n", r.n_tools, r.H, r.k, num(r.t_exact_median_ms),
                           num(r.t_sts_median_ms));
    }
    return out;
}

void PolicyBenchConfig::validate() const {
    if (policies.empty())
        throw ConfigError("policy bench needs at least one policy");
    if (episodes < 1)
        throw ConfigError("episode count must be at least 1");
    if (max_attempts < 1)
        throw ConfigError("max_attempts must be at least 1");
    if (!(beta >= 0.0))
        throw ConfigError("beta must be nonnegative");
    if (threads < 1)
        throw ConfigError("threads must be at least 1");
    world.validate();
    mpc.validate();
}

void from_json(const nlohmann::json& j, PolicyBenchConfig& cfg) {
    if (j.contains("policies")) {
        cfg.policies.clear();
        for (const auto& name : j.at("policies"))
            cfg.policies.push_back(parse_policy(name.get<std::string>()));
    }
    cfg.episodes = j.value("episodes", cfg.episodes);
    cfg.max_attempts = j.value("max_attempts", cfg.max_attempts);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.beta = j.value("beta", cfg.beta);
    cfg.threads = j.value("threads", cfg.threads);

    auto& w = cfg.world;
    w.dims.h = j.value("grid_h", w.dims.h);
    w.dims.w = j.value("grid_w", w.dims.w);
    w.objects = j.value("objects", w.objects);
    w.n_tools = j.value("n_tools", w.n_tools);
    w.top_m = j.value("top_m", w.top_m);
    w.sigma_scale = j.value("sigma_scale", w.sigma_scale);
    w.p_disturb = j.value("p_disturb", w.p_disturb);
    w.jitter_radius = j.value("jitter_radius", w.jitter_radius);
    w.pick_time = j.value("pick_time", w.pick_time);
    w.tool_change_time = j.value("tool_change_time", w.tool_change_time);

    auto& m = cfg.mpc;
    m.H = j.value("H", m.H);
    m.k = j.value("k", m.k);
    m.params.c = j.value("c", m.params.c);
    m.params.l = j.value("l", m.params.l);
    m.p_swap = j.value("p_swap", m.p_swap);
    m.max_hold = j.value("max_hold", m.max_hold);
    m.n_top = j.value("n_top", m.n_top);
}

std::vector<PolicyRow> run_policy_bench(const PolicyBenchConfig& cfg) {
    cfg.validate();
    const auto n_policies = cfg.policies.size();
    const auto n_episodes = static_cast<std::size_t>(cfg.episodes);

    std::vector<EventCounts> counts(n_policies * n_episodes);
    parallel_for(static_cast<int>(counts.size()), cfg.threads, [&](int job) {
        const auto p = static_cast<std::size_t>(job) / n_episodes;
        const auto e = static_cast<std::size_t>(job) % n_episodes;
        const std::uint64_t episode_seed = derive_seed(cfg.seed, e);
        const EpisodeLog log =
            run_episode(BinWorld::sample(cfg.world, episode_seed), cfg.policies[p], cfg.mpc,
                        cfg.max_attempts, episode_seed);
        counts[static_cast<std::size_t>(job)] = log.counts();
    });

    std::vector<PolicyRow> rows;
    for (std::size_t p = 0; p < n_policies; ++p) {
        PolicyRow row;
        row.policy = std::string(policy_name(cfg.policies[p]));
        row.episodes = cfg.episodes;
        double score_sum = 0.0;
        int scored = 0;
        for (std::size_t e = 0; e < n_episodes; ++e) {
            const EventCounts& c = counts[p * n_episodes + e];
            row.totals += c;
            if (c.pa == 0) {
                ++row.no_attempt_episodes;
                continue;
            }
            score_sum += beta_tc_score(c, cfg.beta);
            ++scored;
        }
        if (row.totals.pa > 0) {
            row.tc_score = beta_tc_score(row.totals, cfg.beta);
            row.ps_per_hr =
                throughput(row.totals, cfg.world.pick_time, cfg.world.tool_change_time);
        }
        row.mean_tc_score = scored > 0 ? score_sum / scored : 0.0;
        rows.push_back(row);
    }
    return rows;
}

std::string policy_bench_csv(std::span<const PolicyRow> rows) {
    std::string out = "policy,episodes,TC,PA,PS,tc_score,mean_tc_score,ps_per_hr,flag\n";
    for (const auto& r : rows) {
        const std::string flag =
            r.no_attempt_episodes > 0
                ? fmt::format("no_attempts:{}", r.no_attempt_episodes)
                : std::string();
        out += fmt::format("{},{},{},{},{},{},{},{},{}\n", r.policy, r.episodes, r.totals.tc,
                           r.totals.pa, r.totals.ps, num(r.tc_score), num(r.mean_tc_score),
                           num(r.ps_per_hr), flag);
    }
    return out;
}

} // namespace gtsp

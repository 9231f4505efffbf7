#include "gtsp/sim.hpp"

#include "gtsp/baselines.hpp"
#include "gtsp/errors.hpp"
#include "gtsp/exact_solver.hpp"
#include "gtsp/sts_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace gtsp {

PolicyKind parse_policy(std::string_view name) {
    if (name == "randomized")
        return PolicyKind::Randomized;
    if (name == "naive-greedy")
        return PolicyKind::NaiveGreedy;
    if (name == "greedy")
        return PolicyKind::Greedy;
    if (name == "sts")
        return PolicyKind::Sts;
    if (name == "exact")
        return PolicyKind::Exact;
    throw ConfigError("unknown policy '" + std::string(name) + "'");
}

std::string_view policy_name(PolicyKind kind) {
    switch (kind) {
    case PolicyKind::Randomized:
        return "randomized";
    case PolicyKind::NaiveGreedy:
        return "naive-greedy";
    case PolicyKind::Greedy:
        return "greedy";
    case PolicyKind::Sts:
        return "sts";
    case PolicyKind::Exact:
        return "exact";
    }
    return "unknown";
}

void MpcConfig::validate() const {
    if (H < 1)
        throw ConfigError("horizon H must be at least 1");
    if (k < 1)
        throw ConfigError("sparsity factor k must be at least 1");
    params.validate();
    if (!(p_swap >= 0.0 && p_swap <= 1.0))
        throw ConfigError("p_swap must lie in [0, 1]");
    if (max_hold < 1)
        throw ConfigError("max_hold must be at least 1");
    if (n_top < 1)
        throw ConfigError("n_top must be at least 1");
}

GraspProposal mpc_step(const PlanState& s, PolicyKind policy, const MpcConfig& cfg,
                       PolicyContext& ctx) {
    if (s.omega.empty())
        throw EmptyPlanSpace("plan space is empty");

    switch (policy) {
    case PolicyKind::Randomized:
        return randomized_select(s, cfg.p_swap, cfg.max_hold, ctx.steps_since_swap, ctx.rng);
    case PolicyKind::NaiveGreedy:
        return naive_greedy_select(s, cfg.params.c);
    case PolicyKind::Greedy:
        return greedy_tool_select(s, cfg.n_top);
    case PolicyKind::Sts:
        return sts(s, StsConfig{cfg.H, cfg.k, cfg.params}).steps.front();
    case PolicyKind::Exact: {
        for (int h = std::min<int>(cfg.H, static_cast<int>(s.omega.size())); h >= 1; --h) {
            try {
                return solve_exact(s, h, cfg.params).steps.front();
            } catch (const Infeasible&) {
            }
        }
        break;
    }
    }
    throw std::logic_error("mpc_step: no action selected");
}

void WorldParams::validate() const {
    if (dims.h < 1 || dims.w < 1)
        throw ConfigError("grid dimensions must be positive");
    if (objects < 0)
        throw ConfigError("object count must be nonnegative");
    if (n_tools < 1)
        throw ConfigError("n_tools must be at least 1");
    if (top_m < 1)
        throw ConfigError("top_m must be at least 1");
    if (!(sigma_scale > 0.0))
        throw ConfigError("sigma_scale must be positive");
    if (!(p_disturb >= 0.0 && p_disturb <= 1.0))
        throw ConfigError("p_disturb must lie in [0, 1]");
    if (!(jitter_radius >= 0.0))
        throw ConfigError("jitter_radius must be nonnegative");
    if (!(pick_time > 0.0) || !(tool_change_time > 0.0))
        throw ConfigError("pick and tool-change times must be positive");
}

BinWorld::BinWorld(WorldParams params, std::vector<Object> objects, ToolId initial_tool)
    : params_(params), objects_(std::move(objects)), initial_tool_(initial_tool) {
    params_.validate();
    const auto tools = static_cast<std::size_t>(params_.n_tools);
    for (const auto& o : objects_) {
        if (o.sigma.size() != tools || o.scale.size() != tools)
            throw ConfigError("object bump parameters must cover every tool");
    }
    rebuild();
}

BinWorld BinWorld::sample(const WorldParams& params, std::uint64_t seed) {
    params.validate();
    Rng rng(seed);
    const auto tool = static_cast<ToolId>(rng.below(static_cast<std::uint64_t>(params.n_tools)));
    std::vector<Object> objects(static_cast<std::size_t>(params.objects));
    for (auto& o : objects) {
        o.center = {static_cast<double>(rng.below(static_cast<std::uint64_t>(params.dims.w))),
                    static_cast<double>(rng.below(static_cast<std::uint64_t>(params.dims.h)))};
    }
    // Drawn tool by tool to mirror the synthetic generator.
    for (int t = 0; t < params.n_tools; ++t) {
        for (auto& o : objects) {
            o.sigma.push_back(params.sigma_scale * (1.0 - rng.uniform()));
            o.scale.push_back(rng.uniform());
        }
    }
    return BinWorld(params, std::move(objects), tool);
}

const ScoreGrid& BinWorld::field(ToolId tool) const {
    return fields_.at(static_cast<std::size_t>(tool));
}

double BinWorld::true_score(const GraspProposal& w) const {
    if (w.tool < 0 || w.tool >= params_.n_tools)
        return 0.0;
    return field(w.tool).sample(w.u);
}

PlanState BinWorld::observe(ToolId mounted) const {
    PlanState s;
    s.tool = mounted;
    int next_id = 0;
    for (int t = 0; t < params_.n_tools; ++t) {
        for (auto w : grid_to_proposals(field(t), t, params_.top_m)) {
            w.id = next_id++;
            s.omega.push_back(w);
        }
    }
    return s;
}

std::size_t BinWorld::nearest_object(const Point& p) const {
    if (objects_.empty())
        throw std::logic_error("nearest_object on an empty bin");
    std::size_t best = 0;
    double best_d = distance(objects_[0].center, p);
    for (std::size_t i = 1; i < objects_.size(); ++i) {
        const double d = distance(objects_[i].center, p);
        if (d < best_d) {
            best = i;
            best_d = d;
        }
    }
    return best;
}

void BinWorld::remove_object(std::size_t index) {
    objects_.erase(objects_.begin() + static_cast<std::ptrdiff_t>(index));
    rebuild();
}

void BinWorld::move_object(std::size_t index, Point to) {
    to.x = std::clamp(to.x, 0.0, static_cast<double>(params_.dims.w - 1));
    to.y = std::clamp(to.y, 0.0, static_cast<double>(params_.dims.h - 1));
    objects_.at(index).center = to;
    rebuild();
}

void BinWorld::rebuild() {
    fields_.clear();
    std::vector<Bump> bumps;
    for (int t = 0; t < params_.n_tools; ++t) {
        bumps.clear();
        const auto ti = static_cast<std::size_t>(t);
        for (const auto& o : objects_)
            bumps.push_back({o.center, o.sigma[ti], o.scale[ti]});
        fields_.push_back(render_bumps(params_.dims, bumps));
    }
}

GraspOutcome simulate_grasp(BinWorld& world, const GraspProposal& w, Rng& rng) {
    if (world.empty())
        return GraspOutcome::Fail;

    const bool success = rng.bernoulli(world.true_score(w));
    const std::size_t nearest = world.nearest_object(w.u);
    if (success) {
        world.remove_object(nearest);
        return GraspOutcome::Success;
    }
    if (rng.bernoulli(world.params().p_disturb)) {
        const double angle = 2.0 * std::numbers::pi * rng.uniform();
        const double radius = world.params().jitter_radius * rng.uniform();
        Point to = world.objects()[nearest].center;
        to.x += radius * std::cos(angle);
        to.y += radius * std::sin(angle);
        world.move_object(nearest, to);
    }
    return GraspOutcome::Fail;
}

std::string EpisodeLog::symbols() const {
    std::string out;
    out.reserve(events.size());
    for (const auto& e : events)
        out.push_back(static_cast<char>(e.event));
    return out;
}

EventCounts EpisodeLog::counts() const {
    return parse_event_log(symbols());
}

EpisodeLog run_episode(BinWorld world, PolicyKind policy, const MpcConfig& cfg,
                       int max_attempts, std::uint64_t seed) {
    if (max_attempts < 1)
        throw ConfigError("max_attempts must be at least 1");
    cfg.validate();

    Rng outcome_rng(derive_seed(seed, 1));
    PolicyContext ctx(derive_seed(seed, 2));

    EpisodeLog log;
    log.policy = std::string(policy_name(policy));
    log.initial_objects = world.remaining();

    const WorldParams& wp = world.params();
    ToolId mounted = world.initial_tool();
    double clock = 0.0;
    for (int attempt = 0; attempt < max_attempts && !world.empty(); ++attempt) {
        const PlanState observation = world.observe(mounted);
        const GraspProposal action = mpc_step(observation, policy, cfg, ctx);
        const bool observed =
            std::find(observation.omega.begin(), observation.omega.end(), action) !=
            observation.omega.end();
        if (!observed)
            throw std::logic_error("policy returned an action outside the observation");

        if (action.tool != mounted) {
            clock += wp.tool_change_time;
            log.events.push_back({Event::ToolChange, clock});
            mounted = action.tool;
            ctx.steps_since_swap = 0;
        } else {
            ++ctx.steps_since_swap;
        }

        const GraspOutcome outcome = simulate_grasp(world, action, outcome_rng);
        clock += wp.pick_time;
        log.events.push_back(
            {outcome == GraspOutcome::Success ? Event::Success : Event::Fail, clock});
        log.actions.push_back(action);
    }
    log.remaining_objects = world.remaining();
    return log;
}

std::string format_episode_log(const EpisodeLog& log) {
    std::ostringstream os;
    os.precision(17);
    os << "# gtsp episode log policy=" << log.policy << '\n';
    for (const auto& e : log.events)
        os << static_cast<char>(e.event) << ' ' << e.time << '\n';
    const EventCounts c = log.counts();
    os << "# summary tc=" << c.tc << " pa=" << c.pa << " ps=" << c.ps
       << " elapsed=" << log.elapsed() << " initial_objects=" << log.initial_objects
       << " remaining_objects=" << log.remaining_objects << '\n';
    return os.str();
}

std::string read_event_symbols(std::string_view text) {
    std::string out;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream fields(line);
        std::string token;
        if (!(fields >> token) || token.front() == '#')
            continue;
        out += token;
    }
    return out;
}

} // namespace gtsp

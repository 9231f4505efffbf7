#include "gtsp/baselines.hpp"

#include "gtsp/errors.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace gtsp {

namespace {

void require_nonempty(const PlanState& s) {
    if (s.omega.empty())
        throw EmptyPlanSpace("plan space is empty");
}

// Best proposal per tool, keyed by ascending tool id.
std::map<ToolId, GraspProposal> top_per_tool(const PlanState& s) {
    std::map<ToolId, GraspProposal> best;
    for (const auto& w : s.omega) {
        auto [it, inserted] = best.try_emplace(w.tool, w);
        if (!inserted && ranks_before(w, it->second))
            it->second = w;
    }
    return best;
}

} // namespace

GraspProposal randomized_select(const PlanState& s, double p_swap, int max_hold,
                                int steps_since_swap, Rng& rng) {
    require_nonempty(s);
    const auto best = top_per_tool(s);

    std::vector<ToolId> others;
    for (const auto& [tool, w] : best) {
        if (tool != s.tool)
            others.push_back(tool);
    }

    // The draw is consumed every step so the stream does not depend on the
    // plan-space contents.
    const bool roll = rng.bernoulli(p_swap);
    const bool swap = !others.empty() && (roll || steps_since_swap >= max_hold);
    if (swap)
        return best.at(others[rng.below(others.size())]);

    if (auto it = best.find(s.tool); it != best.end())
        return it->second;
    // Mounted tool has nothing left; the only option is another tool.
    return best.at(others.front());
}

GraspProposal naive_greedy_select(const PlanState& s, double c) {
    require_nonempty(s);
    const GraspProposal* best = &s.omega.front();
    double best_reward = step_reward(s.tool, *best, c);
    for (const auto& w : s.omega) {
        const double r = step_reward(s.tool, w, c);
        if (r > best_reward || (r == best_reward && ranks_before(w, *best))) {
            best = &w;
            best_reward = r;
        }
    }
    return *best;
}

GraspProposal greedy_tool_select(const PlanState& s, int n_top) {
    require_nonempty(s);
    if (n_top < 1)
        throw ConfigError("n_top must be at least 1");

    std::map<ToolId, std::vector<GraspProposal>> by_tool;
    for (const auto& w : s.omega)
        by_tool[w.tool].push_back(w);

    const GraspProposal* chosen = nullptr;
    double best_sum = 0.0;
    for (auto& [tool, props] : by_tool) {
        std::sort(props.begin(), props.end(), RanksBefore{});
        const auto n = std::min<std::size_t>(static_cast<std::size_t>(n_top), props.size());
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            sum += props[i].rho;
        // Map iteration is by ascending tool id, so strict > keeps the lower id.
        if (chosen == nullptr || sum > best_sum) {
            chosen = &props.front();
            best_sum = sum;
        }
    }
    return *chosen;
}

} // namespace gtsp

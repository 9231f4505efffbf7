#include "gtsp/core.hpp"

#include "gtsp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace gtsp {

double distance(const Point& a, const Point& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

bool ranks_before(const GraspProposal& a, const GraspProposal& b) {
    if (a.rho != b.rho)
        return a.rho > b.rho;
    if (a.tool != b.tool)
        return a.tool < b.tool;
    return a.id < b.id;
}

void RewardParams::validate() const {
    if (!(c < 0.0)) {
        std::ostringstream os;
        os << "tool-change cost c must be strictly negative (got " << c << ")";
        throw ConfigError(os.str());
    }
    if (!(l >= 0.0)) {
        std::ostringstream os;
        os << "void radius l must be nonnegative (got " << l << ")";
        throw ConfigError(os.str());
    }
}

bool l_separated(const GraspProposal& a, const GraspProposal& b, double l) {
    return distance(a.u, b.u) > l;
}

double step_reward(ToolId current_tool, const GraspProposal& w, double c) {
    return w.tool != current_tool ? w.rho + c : w.rho;
}

PlanState apply_action(const PlanState& s, const GraspProposal& w, double l) {
    const bool present = std::any_of(s.omega.begin(), s.omega.end(),
                                     [&](const GraspProposal& p) { return p.id == w.id; });
    if (!present)
        throw ActionNotInPlanSpace("proposal " + std::to_string(w.id) +
                                   " is not in the plan space");

    PlanState next;
    next.tool = w.tool;
    next.omega.reserve(s.omega.size());
    for (const auto& p : s.omega) {
        if (l_separated(p, w, l))
            next.omega.push_back(p);
    }
    return next;
}

double plan_value(ToolId initial_tool, std::span<const GraspProposal> steps, double c) {
    double total = 0.0;
    ToolId tool = initial_tool;
    for (const auto& w : steps) {
        total += step_reward(tool, w, c);
        tool = w.tool;
    }
    return total;
}

int count_tool_changes(ToolId initial_tool, std::span<const GraspProposal> steps) {
    int changes = 0;
    ToolId tool = initial_tool;
    for (const auto& w : steps) {
        if (w.tool != tool)
            ++changes;
        tool = w.tool;
    }
    return changes;
}

ValidationReport validate_plan(const PlanState& s, const Plan& plan, double c, double l,
                               int H) {
    ValidationReport report;
    auto& out = report.violations;

    if (static_cast<int>(plan.steps.size()) != H) {
        out.push_back("plan has " + std::to_string(plan.steps.size()) + " steps, expected " +
                      std::to_string(H));
    }

    std::set<int> seen;
    for (const auto& w : plan.steps) {
        auto it = std::find_if(s.omega.begin(), s.omega.end(),
                               [&](const GraspProposal& p) { return p.id == w.id; });
        if (it == s.omega.end() || !(*it == w))
            out.push_back("step " + std::to_string(w.id) + " is not in the plan space");
        if (!seen.insert(w.id).second)
            out.push_back("step " + std::to_string(w.id) + " appears more than once");
    }

    for (std::size_t i = 0; i < plan.steps.size(); ++i) {
        for (std::size_t j = i + 1; j < plan.steps.size(); ++j) {
            if (!l_separated(plan.steps[i], plan.steps[j], l)) {
                out.push_back("steps " + std::to_string(plan.steps[i].id) + " and " +
                              std::to_string(plan.steps[j].id) + " are not l-separated");
            }
        }
    }

    const double recomputed = plan_value(s.tool, plan.steps, c);
    if (!(std::abs(recomputed - plan.value) <= kValueTolerance)) {
        std::ostringstream os;
        os.precision(17);
        os << "value-mismatch: plan reports " << plan.value << ", recomputed " << recomputed;
        out.push_back(os.str());
    }
    return report;
}

} // namespace gtsp

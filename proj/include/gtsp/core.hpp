#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace gtsp {

using ToolId = int;

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

double distance(const Point& a, const Point& b);

/// One plannable grasp: which tool, where, and how likely it succeeds.
struct GraspProposal {
    int id = 0;      ///< unique within an instance, used for tie-breaking
    ToolId tool = 0;
    Point u;
    double rho = 0.0; ///< success probability in [0, 1]

    friend bool operator==(const GraspProposal&, const GraspProposal&) = default;
};

/// The deterministic order used for every tie-break in the toolkit:
/// descending rho, then ascending tool, then ascending id.
bool ranks_before(const GraspProposal& a, const GraspProposal& b);

struct RanksBefore {
    bool operator()(const GraspProposal& a, const GraspProposal& b) const {
        return ranks_before(a, b);
    }
};

/// Plan space plus the currently mounted tool.
struct PlanState {
    std::vector<GraspProposal> omega;
    ToolId tool = 0;
};

/// Tool-change cost `c` (strictly negative) and void radius `l`.
struct RewardParams {
    double c = -0.2;
    double l = 20.0;

    /// Throws ConfigError unless c < 0 and l >= 0.
    void validate() const;
};

struct Plan {
    std::vector<GraspProposal> steps;
    double value = 0.0;
};

/// True iff the two proposals are strictly farther apart than `l`.
bool l_separated(const GraspProposal& a, const GraspProposal& b, double l);

double step_reward(ToolId current_tool, const GraspProposal& w, double c);

/// GTSP-void transition: mount w.tool and drop every proposal that is not
/// l-separated from w (w included).
PlanState apply_action(const PlanState& s, const GraspProposal& w, double l);

/// Sum of step rewards along `steps`, carrying the mounted tool forward.
double plan_value(ToolId initial_tool, std::span<const GraspProposal> steps, double c);

/// Number of tool changes incurred when executing `steps` from `initial_tool`.
int count_tool_changes(ToolId initial_tool, std::span<const GraspProposal> steps);

struct ValidationReport {
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
};

/// Checks the feasibility contract shared by both solvers: steps drawn
/// from s.omega, exactly H of them, pairwise l-separated, and a value field
/// matching the recomputed return within 1e-9.
ValidationReport validate_plan(const PlanState& s, const Plan& plan, double c, double l,
                               int H);

inline constexpr double kValueTolerance = 1e-9;

} // namespace gtsp

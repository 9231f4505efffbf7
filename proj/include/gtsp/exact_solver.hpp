#pragma once

#include "gtsp/core.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace gtsp {

/// Directed graph over the plan space with auxiliary source and sink nodes.
///
/// Interior node i corresponds to nodes[i]. Edge rewards telescope so that
/// the reward of a source -> i1 -> ... -> iH -> sink path equals the plan
/// value of (i1, ..., iH):
///   source -> i : c * [tool_s != tool_i]
///   i -> j      : rho_i + c * [tool_i != tool_j]   (only if i, j are l-separated)
///   i -> sink   : rho_i
class PathGraph {
public:
    PathGraph(const PlanState& s, const RewardParams& params, int H);

    std::size_t size() const { return nodes_.size(); }
    int horizon() const { return H_; }
    const std::vector<GraspProposal>& nodes() const { return nodes_; }

    bool has_edge(std::size_t i, std::size_t j) const { return admitted_[i * size() + j] != 0; }
    double edge_reward(std::size_t i, std::size_t j) const { return reward_[i * size() + j]; }
    double source_reward(std::size_t i) const { return source_reward_[i]; }
    double sink_reward(std::size_t i) const { return nodes_[i].rho; }

    std::size_t interior_edge_count() const;

    /// Sum of edge rewards along source -> path -> sink. `path` holds node
    /// indices; consecutive nodes must be joined by an interior edge.
    double path_reward(const std::vector<std::size_t>& path) const;

private:
    std::vector<GraspProposal> nodes_;
    std::vector<double> source_reward_;
    std::vector<double> reward_;
    std::vector<char> admitted_;
    int H_;
};

PathGraph build_path_graph(const PlanState& s, const RewardParams& params, int H);

struct ExactResult {
    Plan plan;
    std::uint64_t nodes_expanded = 0;
};

/// Maximum-return elementary path of exactly H pairwise l-separated grasps.
///
/// Depth-first branch and bound over the path graph. Children are visited in
/// the global proposal order and a subtree is cut when the accumulated
/// reward plus the H - depth largest remaining rho values cannot beat the
/// incumbent (swap costs are never positive, so the bound is admissible).
/// Equal-valued optima resolve to the lexicographically first sequence.
///
/// Throws Infeasible when no such sequence exists, ConfigError on H < 1 or
/// invalid params.
ExactResult solve_exact_detailed(const PlanState& s, int H, const RewardParams& params);

Plan solve_exact(const PlanState& s, int H, const RewardParams& params);

/// Exhaustive enumeration of every ordered sequence of H distinct, pairwise
/// l-separated proposals. Test oracle for solve_exact; refuses instances
/// with more than 14 proposals or H > 5 (InstanceTooLarge).
Plan brute_force_oracle(const PlanState& s, int H, const RewardParams& params);

} // namespace gtsp

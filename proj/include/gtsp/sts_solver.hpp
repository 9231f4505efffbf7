#pragma once

#include "gtsp/core.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace gtsp {

struct StsConfig {
    int H = 2;
    int k = 2; ///< sparsity factor: proposals expanded per tool at each node
    RewardParams params;

    void validate() const;
};

/// Union over tools of the k highest-rho proposals, returned in global order.
std::vector<GraspProposal> top_k_per_tool(std::span<const GraspProposal> omega, int k);

struct StsResult {
    Plan plan;
    std::uint64_t nodes_expanded = 0;
};

/// Sparse tree search of depth H.
///
/// Each node recomputes top_k_per_tool on its own (already voided) plan
/// space, recurses on every candidate and keeps the best; exact value ties
/// go to the candidate earliest in the global order. If the plan space runs
/// dry before depth H the partial plan is returned instead of failing.
StsResult sts_detailed(const PlanState& s, const StsConfig& cfg);

Plan sts(const PlanState& s, const StsConfig& cfg);

} // namespace gtsp

#pragma once

#include "gtsp/core.hpp"
#include "gtsp/rng.hpp"

namespace gtsp {

/// Swaps to a uniformly chosen other tool with probability `p_swap` per pick
/// attempt, or unconditionally once `steps_since_swap >= max_hold` (as long
/// as another tool has proposals). Returns the top-ranked proposal of the
/// resulting tool. Throws EmptyPlanSpace.
GraspProposal randomized_select(const PlanState& s, double p_swap, int max_hold,
                                int steps_since_swap, Rng& rng);

/// One-step greedy: argmax of step_reward over the plan space.
GraspProposal naive_greedy_select(const PlanState& s, double c);

/// Picks the tool whose n_top best rho values have the largest sum (lower
/// tool id on ties) and returns that tool's top-ranked proposal.
GraspProposal greedy_tool_select(const PlanState& s, int n_top);

inline constexpr double kDefaultSwapProbability = 0.75;
inline constexpr int kDefaultMaxHold = 10;
inline constexpr int kDefaultGreedyTop = 5;

} // namespace gtsp

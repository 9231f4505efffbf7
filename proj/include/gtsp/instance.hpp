#pragma once

#include "gtsp/core.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace gtsp {

/// Horizon, swap cost, void radius and sparsity factor carried by an instance.
struct SolverParams {
    int H = 3;
    double c = -0.2;
    double l = 20.0;
    int k = 2;

    RewardParams reward() const { return {c, l}; }
};

/// Serializable problem bundle; the common input of every CLI subcommand.
///
/// On disk:
///   { "tools": [int...], "current_tool": int,
///     "proposals": [{"id": int, "tool": int, "x": number, "y": number, "rho": number}...],
///     "params": {"H": int, "c": number, "l": number, "k": int} }
struct ProblemInstance {
    std::vector<ToolId> tools;
    ToolId current_tool = 0;
    std::vector<GraspProposal> proposals;
    SolverParams params;

    PlanState state() const { return {proposals, current_tool}; }

    /// Throws ConfigError on duplicate ids, rho outside [0, 1], unknown tools,
    /// or invalid solver parameters.
    void validate() const;
};

void to_json(nlohmann::json& j, const ProblemInstance& inst);
void from_json(const nlohmann::json& j, ProblemInstance& inst);

std::string serialize_instance(const ProblemInstance& inst);
ProblemInstance parse_instance(const std::string& text);
ProblemInstance load_instance(const std::filesystem::path& path);
void save_instance(const ProblemInstance& inst, const std::filesystem::path& path);

/// A solver's answer together with the bookkeeping reported by `solve`.
struct SolveReport {
    std::string solver;
    Plan plan;
    double solve_time_ms = 0.0;
    std::uint64_t nodes_expanded = 0;
    std::optional<int> k;
};

nlohmann::json plan_to_json(const SolveReport& report);

} // namespace gtsp

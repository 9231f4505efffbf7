#pragma once

#include "gtsp/baselines.hpp"
#include "gtsp/core.hpp"
#include "gtsp/metrics.hpp"
#include "gtsp/rng.hpp"
#include "gtsp/synthetic.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace gtsp {

enum class PolicyKind { Randomized, NaiveGreedy, Greedy, Sts, Exact };

/// Accepts "randomized", "naive-greedy", "greedy", "sts", "exact".
PolicyKind parse_policy(std::string_view name);
std::string_view policy_name(PolicyKind kind);

struct MpcConfig {
    int H = 2;
    int k = 2;
    RewardParams params{-0.2, 20.0};
    double p_swap = kDefaultSwapProbability;
    int max_hold = kDefaultMaxHold;
    int n_top = kDefaultGreedyTop;

    void validate() const;
};

/// Mutable per-episode state of a policy: its private random stream and the
/// randomized baseline's hold counter.
struct PolicyContext {
    explicit PolicyContext(std::uint64_t seed) : rng(seed) {}

    Rng rng;
    int steps_since_swap = 0;
};

/// Chooses the next grasp. Planners replan from scratch on every call and
/// return the first step of their plan; the exact solver shortens its
/// horizon until a feasible plan exists. Throws EmptyPlanSpace.
GraspProposal mpc_step(const PlanState& s, PolicyKind policy, const MpcConfig& cfg,
                       PolicyContext& ctx);

struct WorldParams {
    GridDims dims{70, 110};
    int objects = 25;
    int n_tools = 2;
    int top_m = 10;            ///< proposals observed per tool
    double sigma_scale = 3.0;
    double p_disturb = 0.3;    ///< chance a failed grasp moves the nearest object
    double jitter_radius = 5.0;
    double pick_time = 1.0;    ///< seconds per pick attempt
    double tool_change_time = 3.0;

    void validate() const;
};

/// Hidden bin contents: object centers with per-tool score bumps, and the
/// score fields rendered from the surviving objects.
class BinWorld {
public:
    struct Object {
        Point center;
        std::vector<double> sigma; ///< per tool, in cells
        std::vector<double> scale; ///< per tool
    };

    BinWorld(WorldParams params, std::vector<Object> objects, ToolId initial_tool);

    /// Random world: uniform object centers, per-tool widths U(0,1] scaled by
    /// sigma_scale and heights U[0,1), uniform initial tool.
    static BinWorld sample(const WorldParams& params, std::uint64_t seed);

    const WorldParams& params() const { return params_; }
    const std::vector<Object>& objects() const { return objects_; }
    std::size_t remaining() const { return objects_.size(); }
    bool empty() const { return objects_.empty(); }
    ToolId initial_tool() const { return initial_tool_; }

    const ScoreGrid& field(ToolId tool) const;

    /// Success probability of `w` under the true score field of its tool.
    double true_score(const GraspProposal& w) const;

    /// Plan space seen by the robot: top_m cells per tool, ids 0..N-1.
    PlanState observe(ToolId mounted) const;

    /// Index of the object whose center is closest to `p` (lowest index on
    /// ties). World must be nonempty.
    std::size_t nearest_object(const Point& p) const;

    void remove_object(std::size_t index);
    void move_object(std::size_t index, Point to);

private:
    void rebuild();

    WorldParams params_;
    std::vector<Object> objects_;
    std::vector<ScoreGrid> fields_;
    ToolId initial_tool_;
};

enum class GraspOutcome { Success, Fail };

/// Executes `w` in the world: succeeds with the true score probability and
/// then removes the nearest object; on failure, with probability p_disturb,
/// shifts the nearest object by up to jitter_radius cells.
GraspOutcome simulate_grasp(BinWorld& world, const GraspProposal& w, Rng& rng);

enum class Event : char { ToolChange = 'T', Fail = 'F', Success = 'S' };

struct LoggedEvent {
    Event event;
    double time; ///< model seconds elapsed when the event completes
};

struct EpisodeLog {
    std::string policy;
    std::vector<LoggedEvent> events;
    std::vector<GraspProposal> actions; ///< one per pick attempt
    std::size_t initial_objects = 0;
    std::size_t remaining_objects = 0;

    std::string symbols() const;
    EventCounts counts() const;
    double elapsed() const { return events.empty() ? 0.0 : events.back().time; }
};

/// Closed-loop episode: observe, choose via mpc_step, log T if the tool
/// changes, execute, log S or F. Stops when the bin is empty or after
/// max_attempts pick attempts. Outcomes are drawn from
/// derive_seed(seed, 1) and policy randomness from derive_seed(seed, 2).
EpisodeLog run_episode(BinWorld world, PolicyKind policy, const MpcConfig& cfg,
                       int max_attempts, std::uint64_t seed);

/// One "<symbol> <time>" line per event followed by a "# summary" record.
std::string format_episode_log(const EpisodeLog& log);

/// Event symbols of a log file: blank lines and lines starting with '#' are
/// ignored, otherwise the first whitespace-delimited token of each line is
/// taken as a run of event symbols.
std::string read_event_symbols(std::string_view text);

} // namespace gtsp

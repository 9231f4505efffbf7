#include "gtsp/exact_solver.hpp"

#include "gtsp/errors.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace gtsp {

namespace {

// Ties closer than this are resolved by the lexicographic order.
constexpr double kTieEpsilon = 1e-12;

void check_horizon(int H) {
    if (H < 1)
        throw ConfigError("horizon H must be at least 1");
}

class BranchAndBound {
public:
    BranchAndBound(const PathGraph& graph, int H) : graph_(graph), H_(H) {}

    void run() {
        std::vector<std::size_t> order(graph_.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return ranks_before(graph_.nodes()[a], graph_.nodes()[b]);
        });

        path_.reserve(static_cast<std::size_t>(H_));
        for (std::size_t first : order) {
            std::vector<std::size_t> residual;
            residual.reserve(order.size());
            for (std::size_t j : order) {
                if (graph_.has_edge(first, j))
                    residual.push_back(j);
            }
            path_.push_back(first);
            expand(graph_.source_reward(first), residual);
            path_.pop_back();
        }
    }

    bool found() const { return found_; }
    const std::vector<std::size_t>& best_path() const { return best_path_; }
    double best_value() const { return best_value_; }
    std::uint64_t nodes_expanded() const { return nodes_expanded_; }

private:
    // `open` is the reward of the edges taken so far, excluding the sink edge
    // of the last node. `residual` lists, in global order, every node that is
    // l-separated from all nodes on the path.
    void expand(double open, const std::vector<std::size_t>& residual) {
        ++nodes_expanded_;
        const std::size_t last = path_.back();
        const auto remaining = static_cast<std::size_t>(H_) - path_.size();

        if (remaining == 0) {
            const double value = open + graph_.sink_reward(last);
            if (!found_ || value > best_value_ + kTieEpsilon) {
                found_ = true;
                best_value_ = value;
                best_path_ = path_;
            }
            return;
        }
        if (residual.size() < remaining)
            return;

        double bound = open + graph_.sink_reward(last);
        for (std::size_t i = 0; i < remaining; ++i)
            bound += graph_.nodes()[residual[i]].rho;
        if (found_ && bound <= best_value_ + kTieEpsilon)
            return;

        std::vector<std::size_t> next;
        next.reserve(residual.size());
        for (std::size_t j : residual) {
            next.clear();
            for (std::size_t q : residual) {
                if (graph_.has_edge(j, q))
                    next.push_back(q);
            }
            path_.push_back(j);
            expand(open + graph_.edge_reward(last, j), next);
            path_.pop_back();
        }
    }

    const PathGraph& graph_;
    int H_;
    std::vector<std::size_t> path_;
    std::vector<std::size_t> best_path_;
    double best_value_ = -std::numeric_limits<double>::infinity();
    bool found_ = false;
    std::uint64_t nodes_expanded_ = 0;
};

} // namespace

PathGraph::PathGraph(const PlanState& s, const RewardParams& params, int H)
    : nodes_(s.omega), H_(H) {
    check_horizon(H);
    params.validate();
    const std::size_t n = nodes_.size();
    source_reward_.resize(n);
    reward_.assign(n * n, 0.0);
    admitted_.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        source_reward_[i] = nodes_[i].tool != s.tool ? params.c : 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j || !l_separated(nodes_[i], nodes_[j], params.l))
                continue;
            admitted_[i * n + j] = 1;
            reward_[i * n + j] =
                nodes_[i].rho + (nodes_[i].tool != nodes_[j].tool ? params.c : 0.0);
        }
    }
}

std::size_t PathGraph::interior_edge_count() const {
    return static_cast<std::size_t>(std::count(admitted_.begin(), admitted_.end(), 1));
}

double PathGraph::path_reward(const std::vector<std::size_t>& path) const {
    if (path.empty())
        return 0.0;
    double total = source_reward(path.front());
    for (std::size_t t = 0; t + 1 < path.size(); ++t)
        total += edge_reward(path[t], path[t + 1]);
    return total + sink_reward(path.back());
}

PathGraph build_path_graph(const PlanState& s, const RewardParams& params, int H) {
    return PathGraph(s, params, H);
}

ExactResult solve_exact_detailed(const PlanState& s, int H, const RewardParams& params) {
    const PathGraph graph(s, params, H);
    if (graph.size() < static_cast<std::size_t>(H))
        throw Infeasible("plan space has fewer than H proposals");

    BranchAndBound search(graph, H);
    search.run();
    if (!search.found())
        throw Infeasible("no sequence of " + std::to_string(H) +
                         " pairwise l-separated proposals exists");

    ExactResult result;
    result.nodes_expanded = search.nodes_expanded();
    for (std::size_t i : search.best_path())
        result.plan.steps.push_back(graph.nodes()[i]);
    result.plan.value = search.best_value();
    return result;
}

Plan solve_exact(const PlanState& s, int H, const RewardParams& params) {
    return solve_exact_detailed(s, H, params).plan;
}

Plan brute_force_oracle(const PlanState& s, int H, const RewardParams& params) {
    check_horizon(H);
    params.validate();
    if (s.omega.size() > 14 || H > 5)
        throw InstanceTooLarge("brute force oracle is limited to 14 proposals and H <= 5");

    std::vector<GraspProposal> pool = s.omega;
    std::sort(pool.begin(), pool.end(), RanksBefore{});

    std::vector<GraspProposal> current;
    Plan best;
    bool found = false;
    std::vector<char> used(pool.size(), 0);

    auto recurse = [&](auto&& self) -> void {
        if (static_cast<int>(current.size()) == H) {
            const double value = plan_value(s.tool, current, params.c);
            if (!found || value > best.value + kTieEpsilon) {
                found = true;
                best.steps = current;
                best.value = value;
            }
            return;
        }
        for (std::size_t i = 0; i < pool.size(); ++i) {
            if (used[i])
                continue;
            const bool separated = std::all_of(
                current.begin(), current.end(),
                [&](const GraspProposal& w) { return l_separated(w, pool[i], params.l); });
            if (!separated)
                continue;
            used[i] = 1;
            current.push_back(pool[i]);
            self(self);
            current.pop_back();
            used[i] = 0;
        }
    };
    recurse(recurse);

    if (!found)
        throw Infeasible("no sequence of " + std::to_string(H) +
                         " pairwise l-separated proposals exists");
    return best;
}

} // namespace gtsp

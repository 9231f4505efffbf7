#include "gtsp/sts_solver.hpp"

#include "gtsp/errors.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <iterator>
#include <utility>

namespace gtsp {

void StsConfig::validate() const {
    if (H < 1)
        throw ConfigError("horizon H must be at least 1");
    if (k < 1)
        throw ConfigError("sparsity factor k must be at least 1");
    params.validate();
}

namespace {

// Top k per tool of a plan space that is already in global order.
std::vector<GraspProposal> top_k_of_sorted(std::span<const GraspProposal> sorted, int k) {
    std::vector<std::pair<ToolId, int>> taken;
    std::vector<GraspProposal> out;
    for (const auto& w : sorted) {
        auto it = std::find_if(taken.begin(), taken.end(),
                               [&](const auto& t) { return t.first == w.tool; });
        if (it == taken.end()) {
            taken.emplace_back(w.tool, 0);
            it = std::prev(taken.end());
        }
        if (it->second < k) {
            out.push_back(w);
            ++it->second;
        }
    }
    return out;
}

} // namespace

std::vector<GraspProposal> top_k_per_tool(std::span<const GraspProposal> omega, int k) {
    if (k < 1)
        throw ConfigError("sparsity factor k must be at least 1");
    std::vector<GraspProposal> sorted(omega.begin(), omega.end());
    std::sort(sorted.begin(), sorted.end(), RanksBefore{});
    return top_k_of_sorted(sorted, k);
}

namespace {

using Bits = std::vector<std::uint64_t>;

// Proposals in global order plus, per proposal, the set of proposals it leaves in place.
struct Search {
    std::vector<GraspProposal> pool;
    std::vector<Bits> keeps;
    std::size_t words = 0;
    const StsConfig* cfg = nullptr;
    std::uint64_t nodes = 0;

    std::vector<std::size_t> path;

    // Best continuation value from this node. The winning suffix goes to out[path.size()..].
    double run(const Bits& residual, ToolId tool, int depth, std::vector<std::size_t>& out,
               std::size_t& out_len) {
        ++nodes;
        const std::size_t at = path.size();
        out_len = at;
        if (depth == 0)
            return 0.0;

        std::vector<std::pair<ToolId, int>> taken;
        std::vector<std::size_t> child_out(out.size());
        Bits next(words);
        double best = 0.0;
        bool have = false;
        for (std::size_t wi = 0; wi < words; ++wi) {
            for (std::uint64_t bits = residual[wi]; bits != 0; bits &= bits - 1) {
                const std::size_t i = wi * 64 + static_cast<std::size_t>(std::countr_zero(bits));
                const GraspProposal& w = pool[i];
                auto it = std::find_if(taken.begin(), taken.end(),
                                       [&](const auto& t) { return t.first == w.tool; });
                if (it == taken.end()) {
                    taken.emplace_back(w.tool, 0);
                    it = std::prev(taken.end());
                }
                if (it->second >= cfg->k)
                    continue;
                ++it->second;

                for (std::size_t j = 0; j < words; ++j)
                    next[j] = residual[j] & keeps[i][j];
                path.push_back(i);
                std::size_t child_len = 0;
                const double value = step_reward(tool, w, cfg->params.c) +
                                     run(next, w.tool, depth - 1, child_out, child_len);
                path.pop_back();
                if (!have || value > best) {
                    best = value;
                    have = true;
                    out[at] = i;
                    for (std::size_t d = at + 1; d < child_len; ++d)
                        out[d] = child_out[d];
                    out_len = child_len;
                }
            }
        }
        return best;
    }
};

} // namespace

StsResult sts_detailed(const PlanState& s, const StsConfig& cfg) {
    cfg.validate();
    Search search;
    search.cfg = &cfg;
    search.pool = s.omega;
    std::sort(search.pool.begin(), search.pool.end(), RanksBefore{});
    const std::size_t n = search.pool.size();
    search.words = (n + 63) / 64;
    search.keeps.assign(n, Bits(search.words, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (l_separated(search.pool[i], search.pool[j], cfg.params.l))
                search.keeps[i][j / 64] |= std::uint64_t{1} << (j % 64);

    Bits all(search.words, 0);
    for (std::size_t j = 0; j < n; ++j)
        all[j / 64] |= std::uint64_t{1} << (j % 64);

    std::vector<std::size_t> out(static_cast<std::size_t>(cfg.H));
    std::size_t len = 0;
    StsResult result;
    const double value = search.run(all, s.tool, cfg.H, out, len);
    result.nodes_expanded = search.nodes;
    for (std::size_t d = 0; d < len; ++d)
        result.plan.steps.push_back(search.pool[out[d]]);
    result.plan.value = value;
    return result;
}

Plan sts(const PlanState& s, const StsConfig& cfg) {
    return sts_detailed(s, cfg).plan;
}

} // namespace gtsp

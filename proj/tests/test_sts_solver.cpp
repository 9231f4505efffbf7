#include "gtsp/errors.hpp"
#include "gtsp/exact_solver.hpp"
#include "gtsp/sts_solver.hpp"

#include "random_instances.hpp"

#include <doctest.h>

#include <cmath>
#include <map>

using namespace gtsp;
using gtsp::testing::proposal;
using gtsp::testing::random_state;

namespace {

const RewardParams kParams{-0.2, 20.0};

int max_per_tool(const PlanState& s) {
    std::map<ToolId, int> counts;
    int best = 0;
    for (const auto& w : s.omega)
        best = std::max(best, ++counts[w.tool]);
    return best;
}

} // namespace

TEST_CASE("top_k_per_tool keeps the k best per tool") {
    const auto a = proposal(0, 1, 0, 0, 0.9);
    const auto b = proposal(1, 1, 0, 0, 0.5);
    const auto c = proposal(2, 2, 0, 0, 0.8);
    const std::vector<GraspProposal> omega{b, c, a};

    const auto top1 = top_k_per_tool(omega, 1);
    REQUIRE(top1.size() == 2);
    CHECK(top1[0] == a);
    CHECK(top1[1] == c);

    CHECK(top_k_per_tool(omega, 5).size() == omega.size());
    CHECK(top_k_per_tool(std::vector<GraspProposal>{}, 1).empty());

    const auto tie = top_k_per_tool(std::vector{proposal(8, 1, 0, 0, 0.5), proposal(3, 1, 9, 9, 0.5)}, 1);
    REQUIRE(tie.size() == 1);
    CHECK(tie[0].id == 3);

    CHECK_THROWS_AS(top_k_per_tool(omega, 0), ConfigError);
}

TEST_CASE("sts on an empty plan space returns an empty plan") {
    const Plan p = sts(PlanState{{}, 0}, StsConfig{3, 2, kParams});
    CHECK(p.steps.empty());
    CHECK(p.value == 0.0);
}

TEST_CASE("sts returns a partial plan when the plan space runs out") {
    const PlanState s{{proposal(0, 1, 0, 0, 0.9), proposal(1, 1, 5, 0, 0.8)}, 1};
    const Plan p = sts(s, StsConfig{3, 2, kParams});
    REQUIRE(p.steps.size() == 1);
    CHECK(p.steps[0].id == 0);
    CHECK(p.value == doctest::Approx(0.9));
}

TEST_CASE("sts with H=1 matches the exact solver") {
    Rng rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        const PlanState s = random_state(rng, 1 + static_cast<int>(rng.below(12)), 3);
        const Plan approx = sts(s, StsConfig{1, 1, kParams});
        const Plan exact = solve_exact(s, 1, kParams);
        CHECK(approx.steps == exact.steps);
        CHECK(approx.value == exact.value);
    }
}

TEST_CASE("sts at full sparsity is exact on small instances") {
    Rng rng(22);
    int compared = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const PlanState s = random_state(rng, 4 + static_cast<int>(rng.below(9)),
                                         2 + static_cast<int>(rng.below(2)));
        const int H = 1 + static_cast<int>(rng.below(4));
        const Plan approx = sts(s, StsConfig{H, max_per_tool(s), kParams});
        Plan exact;
        try {
            exact = solve_exact(s, H, kParams);
        } catch (const Infeasible&) {
            CHECK(static_cast<int>(approx.steps.size()) < H);
            continue;
        }
        if (static_cast<int>(approx.steps.size()) < H) {
            // A shorter plan can win when some step rewards are negative; it
            // then beats every full-length plan.
            CHECK(approx.value >= exact.value - 1e-9);
            continue;
        }
        CHECK(std::abs(exact.value - approx.value) <= 1e-9);
        ++compared;
    }
    CHECK(compared > 100);
}

TEST_CASE("sts plans are feasible, bounded by the optimum and self-consistent") {
    Rng rng(23);
    for (int trial = 0; trial < 300; ++trial) {
        const PlanState s = random_state(rng, 12, 3);
        const int H = 1 + static_cast<int>(rng.below(5));
        const int k = 1 + static_cast<int>(rng.below(3));
        const Plan p = sts(s, StsConfig{H, k, kParams});

        for (std::size_t i = 0; i < p.steps.size(); ++i) {
            CHECK(std::find(s.omega.begin(), s.omega.end(), p.steps[i]) != s.omega.end());
            for (std::size_t j = i + 1; j < p.steps.size(); ++j)
                CHECK(l_separated(p.steps[i], p.steps[j], kParams.l));
        }
        CHECK(std::abs(plan_value(s.tool, p.steps, kParams.c) - p.value) <= 1e-12);

        if (static_cast<int>(p.steps.size()) == H) {
            const Plan exact = solve_exact(s, H, kParams);
            CHECK(p.value <= exact.value + 1e-9);
        }
    }
}

TEST_CASE("sts value is nondecreasing in k") {
    Rng rng(24);
    for (int trial = 0; trial < 200; ++trial) {
        const PlanState s = random_state(rng, 15, 3);
        const int H = 2 + static_cast<int>(rng.below(4));
        double previous = -1e300;
        for (int k = 1; k <= 4; ++k) {
            const double v = sts(s, StsConfig{H, k, kParams}).value;
            CHECK(v >= previous - 1e-9);
            previous = v;
        }
    }
}

TEST_CASE("sts is deterministic and independent of input order") {
    Rng rng(25);
    for (int trial = 0; trial < 50; ++trial) {
        PlanState s = random_state(rng, 14, 3);
        const StsConfig cfg{3, 2, kParams};
        const Plan a = sts(s, cfg);
        const Plan b = sts(s, cfg);
        CHECK(a.steps == b.steps);
        CHECK(a.value == b.value);
        std::reverse(s.omega.begin(), s.omega.end());
        const Plan c = sts(s, cfg);
        CHECK(a.steps == c.steps);
    }
}

TEST_CASE("StsConfig validation") {
    CHECK_THROWS_AS((StsConfig{0, 1, kParams}.validate()), ConfigError);
    CHECK_THROWS_AS((StsConfig{1, 0, kParams}.validate()), ConfigError);
    CHECK_THROWS_AS((StsConfig{1, 1, RewardParams{0.5, 1.0}}.validate()), ConfigError);
}

#include "gtsp/synthetic.hpp"

#include "gtsp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gtsp {

namespace {

// exp(-x) < 1e-12 for x > 27.64.
constexpr double kCutoffExponent = 27.64;

} // namespace

ScoreGrid::ScoreGrid(GridDims dims, double fill)
    : dims_(dims),
      values_(static_cast<std::size_t>(dims.h) * static_cast<std::size_t>(dims.w), fill) {}

double ScoreGrid::sample(const Point& p) const {
    const int col = std::clamp(static_cast<int>(std::lround(p.x)), 0, dims_.w - 1);
    const int row = std::clamp(static_cast<int>(std::lround(p.y)), 0, dims_.h - 1);
    return at(row, col);
}

ScoreGrid render_bumps(GridDims dims, std::span<const Bump> bumps) {
    ScoreGrid grid(dims);
    for (const auto& b : bumps) {
        if (b.scale <= 0.0 || b.sigma <= 0.0)
            continue;
        const double two_var = 2.0 * b.sigma * b.sigma;
        const double reach = std::sqrt(kCutoffExponent * two_var);
        const int r0 = std::max(0, static_cast<int>(std::floor(b.center.y - reach)));
        const int r1 = std::min(dims.h - 1, static_cast<int>(std::ceil(b.center.y + reach)));
        const int c0 = std::max(0, static_cast<int>(std::floor(b.center.x - reach)));
        const int c1 = std::min(dims.w - 1, static_cast<int>(std::ceil(b.center.x + reach)));
        for (int r = r0; r <= r1; ++r) {
            const double dy = r - b.center.y;
            for (int c = c0; c <= c1; ++c) {
                const double dx = c - b.center.x;
                const double e = (dx * dx + dy * dy) / two_var;
                if (e <= kCutoffExponent)
                    grid.at(r, c) += b.scale * std::exp(-e);
            }
        }
    }
    for (int r = 0; r < dims.h; ++r)
        for (int c = 0; c < dims.w; ++c)
            grid.at(r, c) = std::clamp(grid.at(r, c), 0.0, 1.0);
    return grid;
}

ScoreGrid generate_grasp_model(GridDims dims, std::span<const Point> centers, Rng& rng,
                               double sigma_scale, std::vector<Bump>* bumps_out) {
    std::vector<Bump> bumps;
    bumps.reserve(centers.size());
    for (const auto& p : centers) {
        const double sigma = 1.0 - rng.uniform(); // (0, 1]
        const double scale = rng.uniform();
        bumps.push_back({p, sigma_scale * sigma, scale});
    }
    ScoreGrid grid = render_bumps(dims, bumps);
    if (bumps_out != nullptr)
        *bumps_out = std::move(bumps);
    return grid;
}

std::vector<GraspProposal> grid_to_proposals(const ScoreGrid& grid, ToolId tool, int top_m) {
    if (top_m < 1)
        throw ConfigError("top_m must be at least 1");
    const auto values = grid.values();
    std::vector<std::size_t> cells(values.size());
    std::iota(cells.begin(), cells.end(), std::size_t{0});
    const auto n = std::min(cells.size(), static_cast<std::size_t>(top_m));
    std::partial_sort(cells.begin(), cells.begin() + static_cast<std::ptrdiff_t>(n), cells.end(),
                      [&](std::size_t a, std::size_t b) {
                          return values[a] != values[b] ? values[a] > values[b] : a < b;
                      });

    const auto width = static_cast<std::size_t>(grid.dims().w);
    std::vector<GraspProposal> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t cell = cells[i];
        GraspProposal w;
        w.id = static_cast<int>(cell);
        w.tool = tool;
        w.u = {static_cast<double>(cell % width), static_cast<double>(cell / width)};
        w.rho = values[cell];
        out.push_back(w);
    }
    return out;
}

void GenParams::validate() const {
    if (dims.h < 1 || dims.w < 1)
        throw ConfigError("grid dimensions must be positive");
    if (m < 1)
        throw ConfigError("center count m must be at least 1");
    if (n_tools < 1)
        throw ConfigError("n_tools must be at least 1");
    if (top_m < 1)
        throw ConfigError("top_m must be at least 1");
    if (!(sigma_scale > 0.0))
        throw ConfigError("sigma_scale must be positive");
}

SampledInstance sample_instance_detailed(const GenParams& gp, const SolverParams& params) {
    gp.validate();
    Rng rng(gp.seed);

    SampledInstance out;
    auto& inst = out.instance;
    inst.params = params;
    for (int t = 0; t < gp.n_tools; ++t)
        inst.tools.push_back(t);
    inst.current_tool = static_cast<ToolId>(rng.below(static_cast<std::uint64_t>(gp.n_tools)));

    out.centers.reserve(static_cast<std::size_t>(gp.m));
    for (int i = 0; i < gp.m; ++i) {
        const double x = static_cast<double>(rng.below(static_cast<std::uint64_t>(gp.dims.w)));
        const double y = static_cast<double>(rng.below(static_cast<std::uint64_t>(gp.dims.h)));
        out.centers.push_back({x, y});
    }

    int next_id = 0;
    for (int t = 0; t < gp.n_tools; ++t) {
        const ScoreGrid grid = generate_grasp_model(gp.dims, out.centers, rng, gp.sigma_scale);
        for (auto w : grid_to_proposals(grid, t, gp.top_m)) {
            w.id = next_id++;
            inst.proposals.push_back(w);
        }
    }
    inst.validate();
    return out;
}

ProblemInstance sample_instance(const GenParams& gp, const SolverParams& params) {
    return sample_instance_detailed(gp, params).instance;
}

} // namespace gtsp

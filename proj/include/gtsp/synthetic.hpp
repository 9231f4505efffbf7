#pragma once

#include "gtsp/core.hpp"
#include "gtsp/instance.hpp"
#include "gtsp/rng.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace gtsp {

struct GridDims {
    int h = 70;
    int w = 110;
};

/// Per-tool grasp-score map. Cell (row, col) sits at position (x=col, y=row).
class ScoreGrid {
public:
    ScoreGrid() = default;
    explicit ScoreGrid(GridDims dims, double fill = 0.0);

    GridDims dims() const { return dims_; }
    std::size_t cell_count() const { return values_.size(); }

    double at(int row, int col) const { return values_[index(row, col)]; }
    double& at(int row, int col) { return values_[index(row, col)]; }

    /// Score of the cell containing `p` (rounded to the nearest cell, clamped
    /// to the grid).
    double sample(const Point& p) const;

    std::span<const double> values() const { return values_; }

private:
    std::size_t index(int row, int col) const {
        return static_cast<std::size_t>(row) * static_cast<std::size_t>(dims_.w) +
               static_cast<std::size_t>(col);
    }

    GridDims dims_{0, 0};
    std::vector<double> values_;
};

/// One scaled Gaussian bump; `sigma` is already in grid cells.
struct Bump {
    Point center;
    double sigma = 1.0;
    double scale = 1.0;
};

/// Cell score = clip(sum_i scale_i * exp(-|u - center_i|^2 / (2 sigma_i^2)), 0, 1).
/// Contributions below 1e-12 (beyond ~7.5 sigma) are skipped.
ScoreGrid render_bumps(GridDims dims, std::span<const Bump> bumps);

/// Draws sigma_i ~ U(0, 1] and scale_i ~ U[0, 1) per center and renders the
/// bumps with width sigma_scale * sigma_i. Returns the drawn bumps through
/// `bumps_out` when it is non-null.
ScoreGrid generate_grasp_model(GridDims dims, std::span<const Point> centers, Rng& rng,
                               double sigma_scale = 3.0, std::vector<Bump>* bumps_out = nullptr);

/// The top_m highest-scoring cells as proposals of `tool`. Equal scores are
/// broken by row-major cell index, which is also used as the proposal id.
std::vector<GraspProposal> grid_to_proposals(const ScoreGrid& grid, ToolId tool, int top_m);

struct GenParams {
    GridDims dims{70, 110};
    int m = 25;      ///< object centers shared by all tools
    int n_tools = 2;
    int top_m = 10;  ///< proposals kept per tool
    double sigma_scale = 3.0;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Everything drawn while sampling an instance, for inspection in tests.
struct SampledInstance {
    ProblemInstance instance;
    std::vector<Point> centers;
};

/// Samples m uniform centers, one score grid per tool (independent widths
/// and scales over the shared centers), keeps top_m proposals per tool and
/// draws the mounted tool uniformly. Tools are 0..n_tools-1 and proposal ids
/// are renumbered 0..N-1. Fully determined by gp.seed.
SampledInstance sample_instance_detailed(const GenParams& gp, const SolverParams& params);

ProblemInstance sample_instance(const GenParams& gp, const SolverParams& params);

} // namespace gtsp

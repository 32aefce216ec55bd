#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "flab/seminorms.hpp"
#include "flab/types.hpp"

namespace flab {

enum class BoxCountMethod { column_oscillation_2d, cube_grid_3d };

/// Counts per scale, deltas strictly decreasing, every count >= 1 and counts
/// nondecreasing as delta shrinks.
struct BoxCountSeries {
    std::vector<double> deltas;
    std::vector<std::int64_t> counts;
    BoxCountMethod method = BoxCountMethod::column_oscillation_2d;
};

/// 2D graph count: columns of width delta; each contributes
/// max(1, ceil(osc/delta)) where osc is the sampled oscillation in the
/// column. Requires grid step <= delta/10 ("delta-too-small" otherwise)
/// and delta <= range/2. The imaginary part of f must be identically zero.
std::int64_t box_count_2d(const SampledFunction& f, double delta);

/// Occupied delta-cube count of a cloud; cube grid anchored at the cloud's
/// min corner.
std::int64_t box_count_3d(const GraphCloud& cloud, double delta);

/// Dyadic series delta_j = range * 2^-j for j in [j_min, j_max]. Coarser
/// scales are derived from the finest by exact merging, so dyadic nesting
/// (and count monotonicity) holds by construction.
BoxCountSeries box_series_2d(const SampledFunction& f, int j_min, int j_max);
BoxCountSeries box_series_3d(const GraphCloud& cloud, int j_min, int j_max);

/// Largest j with 10 samples per column/slab available.
int max_scale_2d(const SampledFunction& f);
int max_scale_3d(const GraphCloud& cloud);

struct DimensionEstimate {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    BoxCountSeries series;
    int fit_first = 0; // inclusive index range of the fitted scales
    int fit_last = 0;
};

/// Least-squares slope of log count against -log delta. Needs >= 4 scales;
/// the default fit range drops the coarsest and finest scale. Throws
/// numeric_error("degenerate-fit") when all fitted counts are equal.
DimensionEstimate estimate_dimension(const BoxCountSeries& series,
                                     std::optional<std::pair<int, int>> fit_range = std::nullopt);

/// Exponent from the scaling of the largest aligned-window oscillation
/// against dyadic window widths, clipped to (0, 1]. Needs M >= 2^10 + 1 and
/// at least 4 usable scales ("insufficient-resolution" otherwise). The
/// returned SeminormEstimate carries the exponent; value is the fitted
/// oscillation prefactor at unit scale.
SeminormEstimate holder_exponent_estimate(const SampledFunction& f);

} // namespace flab

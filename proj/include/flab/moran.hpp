#pragma once

#include <utility>
#include <vector>

namespace flab {

struct MoranRoot {
    double exponent = 0.0;
    double residual = 0.0; // |sum c_k^s - 1| at the returned exponent, < 1e-12
};

/// Root of sum_k c_k^s = 1 by bisection (ratios in (0,1), at least two).
/// The bracket is grown by doubling until the sum drops below 1; bisection
/// stops at residual < 1e-12 or 100 halvings. Monotonicity of the map is
/// asserted at every step.
MoranRoot moran_solve(const std::vector<double>& ratios);

/// Per-map D-metric contraction bounds 0 < lower_k <= upper_k < 1.
struct ContractionBounds {
    std::vector<double> lower;
    std::vector<double> upper;

    ContractionBounds(std::vector<double> lo, std::vector<double> hi);
};

/// (r, R): Moran roots of the lower and upper ratio lists; r <= R.
std::pair<MoranRoot, MoranRoot> dimension_bounds(const ContractionBounds& bounds);

/// 2 - sigma for sigma in (0, 1).
double holder_upper_bound(double sigma);

} // namespace flab

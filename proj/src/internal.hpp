#pragma once

// Helpers shared by the theorem-harness translation units; not installed.

#include <algorithm>
#include <cmath>

#include "flab/boxcount.hpp"
#include "flab/fif.hpp"
#include "flab/seminorms.hpp"

namespace flab::detail {

inline double scaling_holder_seminorm(const ScalingFunction& alpha, const SampledFunction& domain,
                                      double sigma) {
    switch (alpha.form()) {
    case ScalingFunction::Form::constant: return 0.0;
    case ScalingFunction::Form::affine_in_t:
        // |alpha(t) - alpha(t')| = |slope| |t - t'|; the sup of the Hölder
        // quotient sits at the widest pair.
        return std::abs(alpha.affine_slope()) * std::pow(domain.range(), 1.0 - sigma);
    case ScalingFunction::Form::sampled: return holder_seminorm(alpha.samples(), sigma).value;
    }
    return 0.0;
}

inline double scaling_sup(const ScalingFunction& alpha, const SampledFunction& domain) {
    return alpha.sup_on_grid(domain);
}

inline double scaling_bv_norm(const ScalingFunction& alpha, const SampledFunction& domain) {
    switch (alpha.form()) {
    case ScalingFunction::Form::constant: return std::abs(alpha.constant_value());
    case ScalingFunction::Form::affine_in_t:
        return std::abs(alpha.eval(domain.x0())) + std::abs(alpha.affine_slope()) * domain.range();
    case ScalingFunction::Form::sampled: return total_variation(alpha.samples()).bv_norm;
    }
    return 0.0;
}

/// Box-dimension estimate of a real 2D graph over scales 1..min(cap, densest).
inline DimensionEstimate dim2d(const SampledFunction& f, int j_cap) {
    const int j_max = std::min(max_scale_2d(f), j_cap);
    return estimate_dimension(box_series_2d(f, 1, j_max));
}

/// Box-dimension estimate of a cloud over scales 1..min(cap, densest).
inline DimensionEstimate dim3d(const GraphCloud& cloud, int j_cap) {
    const int j_max = std::min(max_scale_3d(cloud), j_cap);
    return estimate_dimension(box_series_3d(cloud, 1, j_max));
}

} // namespace flab::detail

#pragma once

#include "flab/types.hpp"

namespace flab {

enum class SeminormKind { holder_seminorm, sup_norm, lipschitz, holder_full_norm };

struct SeminormEstimate {
    double value = 0.0;
    double exponent = 1.0;
    SeminormKind kind = SeminormKind::holder_seminorm;
};

/// Discrete Hölder seminorm sup |f(t_i)-f(t_j)| / |t_i-t_j|^sigma over grid
/// pairs; a lower bound for the true seminorm. For M <= 4096 all pairs are
/// used; above that, all pairs within a 512-sample window plus ~1e6
/// deterministically strided long-range pairs.
SeminormEstimate holder_seminorm(const SampledFunction& f, double sigma);

/// holder_seminorm at sigma = 1.
SeminormEstimate lipschitz_estimate(const SampledFunction& f);

/// sup-norm + Hölder seminorm (the Hölder-space norm).
SeminormEstimate holder_full_norm(const SampledFunction& f, double sigma);

struct VariationResult {
    double total_variation = 0.0;
    double bv_norm = 0.0; // |f(x0)| + total variation
};

VariationResult total_variation(const SampledFunction& f);

double sup_norm(const SampledFunction& f);

/// max_j |f(t_j) - g(t_j)|; the grids must match.
double sup_distance(const SampledFunction& f, const SampledFunction& g);

} // namespace flab

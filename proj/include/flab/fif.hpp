#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "flab/types.hpp"

namespace flab {

/// P(t) = a*t + d mapping the full interval onto one subinterval.
struct AffineMapX {
    double a = 1.0;
    double d = 0.0;

    double operator()(double t) const { return a * t + d; }
    double inverse(double t) const { return (t - d) / a; }
};

/// Per-interval scaling alpha_k(t); sup over the working grid must stay < 1.
class ScalingFunction {
public:
    enum class Form { constant, affine_in_t, sampled };

    static ScalingFunction make_constant(cplx value);
    /// alpha(t) = slope*t + intercept.
    static ScalingFunction make_affine(cplx slope, cplx intercept);
    static ScalingFunction make_sampled(SampledFunction samples);

    Form form() const { return form_; }
    cplx eval(double t) const;
    cplx constant_value() const { return intercept_; }
    cplx affine_slope() const { return slope_; }
    const SampledFunction& samples() const;

    /// sup |alpha| over the grid of f's domain (exact for constant/affine endpoints-checked).
    double sup_on_grid(const SampledFunction& grid) const;

private:
    ScalingFunction() = default;
    Form form_ = Form::constant;
    cplx slope_{0.0, 0.0};
    cplx intercept_{0.0, 0.0};
    std::optional<SampledFunction> samples_;
};

/// A validated interpolation problem: germ f, base b and scalings alpha_k on a
/// shared working grid that contains every knot exactly. Construction enforces
///   - b(x_1) = f(x_1), b(x_N) = f(x_N) within 1e-10 (relative to sup|f|),
///   - sup_distance(f, b) > 1e-12 (base must differ from the germ),
///   - sup_k sup_t |alpha_k(t)| < 1.
class FractalProblem {
public:
    FractalProblem(Partition partition, SampledFunction germ, SampledFunction base,
                   std::vector<ScalingFunction> scalings,
                   std::optional<std::vector<cplx>> values = std::nullopt);

    const Partition& partition() const { return partition_; }
    const SampledFunction& germ() const { return germ_; }
    const SampledFunction& base() const { return base_; }
    const std::vector<ScalingFunction>& scalings() const { return scalings_; }
    const std::vector<cplx>& values() const { return values_; }
    /// Grid index of knot i.
    std::int64_t knot_index(int i) const { return knot_index_[static_cast<std::size_t>(i)]; }
    double alpha_sup() const { return alpha_sup_; }

private:
    Partition partition_;
    SampledFunction germ_;
    SampledFunction base_;
    std::vector<ScalingFunction> scalings_;
    std::vector<cplx> values_;
    std::vector<std::int64_t> knot_index_;
    double alpha_sup_ = 0.0;
};

/// W_k(t, y) = (P_k(t), alpha_k(t)*y + f(P_k(t)) - alpha_k(t)*b(t)).
/// Maps validated on construction: P_k endpoint conditions at 1e-12 relative,
/// exact open-interval disjointness, y-map join conditions at 1e-10.
struct IFSSystem {
    std::vector<AffineMapX> maps;
    FractalProblem problem;

    cplx psi(int k, double t, cplx y) const;
};

IFSSystem build_ifs(const FractalProblem& problem);

struct FixedPointReport {
    int iterations = 0;
    double final_change = 0.0;
    double contraction_ratio_observed = 0.0;
    bool converged = false;
};

/// Fixed point of (Sh)(t) = f(t) + alpha_k(P_k^{-1}(t)) * (h - b)(P_k^{-1}(t)),
/// iterated from h_0 = f on the working grid. Pullbacks that land on grid
/// points are taken exactly; otherwise linear interpolation. Throws
/// numeric_error when max_iterations is hit before the sup-change drops
/// below tolerance.
std::pair<SampledFunction, FixedPointReport>
alpha_fractal(const FractalProblem& problem, double tolerance = 1e-10, int max_iterations = 200);

/// General interpolant h(t) = alpha_k(L_k^{-1}(t)) * h(L_k^{-1}(t)) + q_k(L_k^{-1}(t))
/// through (x_i, y_i); q_k must satisfy the endpoint join conditions at 1e-10.
std::pair<SampledFunction, FixedPointReport>
general_fif(const Partition& partition, const std::vector<cplx>& values,
            const std::vector<ScalingFunction>& scalings, const std::vector<SampledFunction>& q,
            double tolerance = 1e-10, int max_iterations = 200);

/// max_j |h(t*_j) - f(t*_j) - alpha_k(s_j)*(h - b)(s_j)|, s_j = P_k^{-1}(t*_j),
/// over the given test points.
double self_referential_residual(const FractalProblem& problem, const SampledFunction& h,
                                 const std::vector<double>& test_points);

/// Random-iteration attractor sampler; uniform map choice from a seeded
/// deterministic PRNG, first burn_in points discarded. Emits (t, Re y, Im y).
GraphCloud chaos_game(const IFSSystem& ifs, std::int64_t n_points, std::uint64_t seed,
                      std::int64_t burn_in = 64);

enum class GraphMode { real_2d, imag_2d, complex_3d, pair_3d };

/// Graph samples of f: (t, Re f), (t, Im f) or (t, Re f, Im f).
GraphCloud graph_cloud(const SampledFunction& f, GraphMode mode);

/// (t_j, Re g(t_j), Re h(t_j)) for two functions on the same grid.
GraphCloud graph_cloud_pair(const SampledFunction& g, const SampledFunction& h);

} // namespace flab

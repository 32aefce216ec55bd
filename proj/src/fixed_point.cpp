//! Banach iteration for the self-referential interpolation operators. Both
//! entry points share one grid loop: pullback positions, scaling values and
//! the additive term are loop-invariant and hoisted out of the iteration.

#include <cmath>
#include <limits>
#include <mutex>

#include "flab/fif.hpp"
#include "flab/parallel.hpp"
#include "flab/seminorms.hpp"

namespace flab {

namespace {

struct Pullback {
    std::int64_t lo = 0;
    double w = 0.0; // 0 means the pullback lands exactly on grid point lo
};

cplx lerp(const std::vector<cplx>& v, const Pullback& p) {
    if (p.w == 0.0) return v[static_cast<std::size_t>(p.lo)];
    return v[static_cast<std::size_t>(p.lo)] +
           p.w * (v[static_cast<std::size_t>(p.lo + 1)] - v[static_cast<std::size_t>(p.lo)]);
}

// Interval of grid point j: right-open [x_k, x_{k+1}), last point in the
// last interval.
std::vector<int> interval_of_point(const std::vector<std::int64_t>& knot_index, std::int64_t m) {
    std::vector<int> interval(static_cast<std::size_t>(m));
    int k = 0;
    const int last = static_cast<int>(knot_index.size()) - 2;
    for (std::int64_t j = 0; j < m; ++j) {
        while (k < last && j >= knot_index[static_cast<std::size_t>(k) + 1]) ++k;
        interval[static_cast<std::size_t>(j)] = k;
    }
    return interval;
}

// Grid position of P_k^{-1}(t_j), snapped onto the grid when it lands within
// 1e-9 of a grid point (exact pullbacks on divisibility-aligned grids).
Pullback pullback_position(std::int64_t j, std::int64_t j_knot, double ratio, std::int64_t m) {
    const double pos = static_cast<double>(j - j_knot) / ratio;
    Pullback p;
    const double snapped = std::round(pos);
    if (std::abs(pos - snapped) < 1e-9) {
        p.lo = static_cast<std::int64_t>(snapped);
        p.w = 0.0;
    } else {
        p.lo = static_cast<std::int64_t>(std::floor(pos));
        p.w = pos - std::floor(pos);
    }
    if (p.lo < 0) p.lo = 0;
    if (p.lo > m - 1) p.lo = m - 1;
    if (p.lo == m - 1 && p.w != 0.0) {
        p.lo = m - 2;
        p.w = 1.0;
    }
    return p;
}

struct IterationSetup {
    std::vector<Pullback> pull;
    std::vector<cplx> alpha_at;   // alpha_k(P_k^{-1}(t_j))
    std::vector<cplx> additive;   // f(t_j) (self-referential) or q_k(P_k^{-1}(t_j))
    std::vector<cplx> subtracted; // b(P_k^{-1}(t_j)) or 0
    double alpha_sup = 0.0;
    double value_scale = 1.0;
};

std::pair<SampledFunction, FixedPointReport> iterate(const IterationSetup& setup,
                                                     std::vector<cplx> h0, double x0, double x1,
                                                     double tolerance, int max_iterations) {
    require_input(tolerance > 0.0, "tolerance must be positive");
    require_input(max_iterations >= 1, "max_iterations must be >= 1");

    const auto m = static_cast<std::int64_t>(h0.size());
    std::vector<cplx> prev = std::move(h0);
    std::vector<cplx> next(prev.size());

    FixedPointReport report;
    double prev_change = std::numeric_limits<double>::quiet_NaN();
    // steps with changes near fp noise say nothing about the contraction
    const double ratio_floor = 1e3 * std::numeric_limits<double>::epsilon() * setup.value_scale;

    for (int it = 1; it <= max_iterations; ++it) {
        std::mutex mu;
        double change = 0.0;
        parallel_for(m, [&](std::int64_t lo, std::int64_t hi) {
            double local = 0.0;
            for (std::int64_t j = lo; j < hi; ++j) {
                const auto ju = static_cast<std::size_t>(j);
                const cplx hnew =
                    setup.additive[ju] +
                    setup.alpha_at[ju] * (lerp(prev, setup.pull[ju]) - setup.subtracted[ju]);
                next[ju] = hnew;
                local = std::max(local, std::abs(hnew - prev[ju]));
            }
            std::lock_guard<std::mutex> lock(mu);
            change = std::max(change, local);
        });
        report.iterations = it;
        report.final_change = change;
        if (std::isfinite(prev_change) && prev_change > ratio_floor) {
            const double ratio = change / prev_change;
            report.contraction_ratio_observed = std::max(report.contraction_ratio_observed, ratio);
            require_internal(ratio <= setup.alpha_sup + 0.05,
                             "observed contraction ratio exceeds sup|alpha| + 0.05");
        }
        prev_change = change;
        prev.swap(next);
        if (change <= tolerance) {
            report.converged = true;
            break;
        }
    }
    if (!report.converged)
        throw numeric_error("no-convergence: fixed-point iteration still moving after " +
                            std::to_string(max_iterations) + " iterations");
    return {SampledFunction(x0, x1, std::move(prev)), report};
}

} // namespace

std::pair<SampledFunction, FixedPointReport>
alpha_fractal(const FractalProblem& problem, double tolerance, int max_iterations) {
    const SampledFunction& f = problem.germ();
    const SampledFunction& b = problem.base();
    const auto m = f.size();

    std::vector<std::int64_t> knot_index(static_cast<std::size_t>(problem.partition().size()));
    for (int i = 0; i < problem.partition().size(); ++i)
        knot_index[static_cast<std::size_t>(i)] = problem.knot_index(i);
    const std::vector<int> interval = interval_of_point(knot_index, m);

    IterationSetup setup;
    setup.pull.resize(static_cast<std::size_t>(m));
    setup.alpha_at.resize(static_cast<std::size_t>(m));
    setup.additive.resize(static_cast<std::size_t>(m));
    setup.subtracted.resize(static_cast<std::size_t>(m));
    setup.alpha_sup = problem.alpha_sup();
    setup.value_scale = std::max(1.0, sup_norm(f) + sup_norm(b));

    for (std::int64_t j = 0; j < m; ++j) {
        const auto ju = static_cast<std::size_t>(j);
        const int k = interval[ju];
        const Pullback p = pullback_position(j, knot_index[static_cast<std::size_t>(k)],
                                             problem.partition().ratio(k), m);
        const double s = f.x0() + (p.w == 0.0 ? f.t(p.lo) - f.x0()
                                              : (static_cast<double>(p.lo) + p.w) * f.step());
        setup.pull[ju] = p;
        setup.alpha_at[ju] = problem.scalings()[static_cast<std::size_t>(k)].eval(s);
        setup.additive[ju] = f.value(j);
        setup.subtracted[ju] = p.w == 0.0
                                   ? b.value(p.lo)
                                   : b.value(p.lo) + p.w * (b.value(p.lo + 1) - b.value(p.lo));
    }

    auto result = iterate(setup, std::vector<cplx>(f.values()), f.x0(), f.x1(), tolerance,
                          max_iterations);

    // the fixed point interpolates the data
    for (int i = 0; i < problem.partition().size(); ++i) {
        const cplx got = result.first.value(problem.knot_index(i));
        require_internal(std::abs(got - problem.values()[static_cast<std::size_t>(i)]) <=
                             10.0 * tolerance,
                         "interpolant misses a knot value");
    }
    return result;
}

std::pair<SampledFunction, FixedPointReport>
general_fif(const Partition& partition, const std::vector<cplx>& values,
            const std::vector<ScalingFunction>& scalings, const std::vector<SampledFunction>& q,
            double tolerance, int max_iterations) {
    require_input(static_cast<int>(values.size()) == partition.size(), "need one value per knot");
    require_input(static_cast<int>(scalings.size()) == partition.intervals(),
                  "need one scaling per subinterval");
    require_input(static_cast<int>(q.size()) == partition.intervals(),
                  "need one q_k per subinterval");
    for (const cplx& y : values)
        require_input(std::isfinite(y.real()) && std::isfinite(y.imag()),
                      "knot values must be finite");
    const SampledFunction& q0 = q.front();
    const double range = partition.length();
    require_input(std::abs(q0.x0() - partition.x_first()) <= 1e-12 * range &&
                      std::abs(q0.x1() - partition.x_last()) <= 1e-12 * range,
                  "q_k must live on the partition interval");
    for (const auto& qk : q)
        require_input(qk.same_grid(q0), "q_k grids must match");

    const auto m = q0.size();
    std::vector<std::int64_t> knot_index(static_cast<std::size_t>(partition.size()));
    for (int i = 0; i < partition.size(); ++i) {
        const double pos =
            (partition.knot(i) - q0.x0()) / q0.range() * static_cast<double>(m - 1);
        const double snapped = std::round(pos);
        require_input(std::abs(pos - snapped) <= 1e-6, "working grid must contain every knot");
        knot_index[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(snapped);
    }

    double y_scale = 1.0;
    for (const cplx& y : values) y_scale = std::max(y_scale, std::abs(y));

    double alpha_sup = 0.0;
    for (const auto& s : scalings) alpha_sup = std::max(alpha_sup, s.sup_on_grid(q0));
    require_input(alpha_sup < 1.0, "scaling-too-large: sup|alpha| must stay below 1");

    // join conditions: alpha_k(x_1) y_1 + q_k(x_1) = y_k and the mirror at x_N
    for (int k = 0; k < partition.intervals(); ++k) {
        const auto ku = static_cast<std::size_t>(k);
        const cplx left = scalings[ku].eval(partition.x_first()) * values.front() +
                          q[ku].value(0);
        const cplx right = scalings[ku].eval(partition.x_last()) * values.back() +
                           q[ku].value(m - 1);
        require_input(std::abs(left - values[ku]) <= 1e-10 * y_scale,
                      "q_k join condition violated at left knot");
        require_input(std::abs(right - values[ku + 1]) <= 1e-10 * y_scale,
                      "q_k join condition violated at right knot");
    }

    const std::vector<int> interval = interval_of_point(knot_index, m);

    IterationSetup setup;
    setup.pull.resize(static_cast<std::size_t>(m));
    setup.alpha_at.resize(static_cast<std::size_t>(m));
    setup.additive.resize(static_cast<std::size_t>(m));
    setup.subtracted.assign(static_cast<std::size_t>(m), cplx{0.0, 0.0});
    setup.alpha_sup = alpha_sup;
    double q_sup = 0.0;
    for (const auto& qk : q) q_sup = std::max(q_sup, sup_norm(qk));
    setup.value_scale = y_scale + q_sup;

    std::vector<cplx> h0(static_cast<std::size_t>(m));
    for (std::int64_t j = 0; j < m; ++j) {
        const auto ju = static_cast<std::size_t>(j);
        const int k = interval[ju];
        const auto ku = static_cast<std::size_t>(k);
        const Pullback p =
            pullback_position(j, knot_index[ku], partition.ratio(k), m);
        const double s = q0.x0() + (static_cast<double>(p.lo) + p.w) * q0.step();
        setup.pull[ju] = p;
        setup.alpha_at[ju] = scalings[ku].eval(s);
        setup.additive[ju] = p.w == 0.0
                                 ? q[ku].value(p.lo)
                                 : q[ku].value(p.lo) +
                                       p.w * (q[ku].value(p.lo + 1) - q[ku].value(p.lo));
        // start from the polyline through the data
        const std::int64_t span = knot_index[ku + 1] - knot_index[ku];
        const double w = span > 0 ? static_cast<double>(j - knot_index[ku]) /
                                        static_cast<double>(span)
                                  : 0.0;
        h0[ju] = values[ku] + w * (values[ku + 1] - values[ku]);
    }

    auto result = iterate(setup, std::move(h0), q0.x0(), q0.x1(), tolerance, max_iterations);

    for (int i = 0; i < partition.size(); ++i) {
        const cplx got = result.first.value(knot_index[static_cast<std::size_t>(i)]);
        require_internal(std::abs(got - values[static_cast<std::size_t>(i)]) <= 10.0 * tolerance,
                         "interpolant misses a knot value");
    }
    return result;
}

double self_referential_residual(const FractalProblem& problem, const SampledFunction& h,
                                 const std::vector<double>& test_points) {
    const Partition& part = problem.partition();
    double worst = 0.0;
    for (double t : test_points) {
        require_input(t >= part.x_first() && t <= part.x_last(), "test point outside the domain");
        int k = 0;
        while (k + 1 < part.intervals() && t >= part.knot(k + 1)) ++k;
        const double a = part.ratio(k);
        const double s = part.x_first() + (t - part.knot(k)) / a;
        const cplx alpha = problem.scalings()[static_cast<std::size_t>(k)].eval(s);
        const cplx rhs =
            problem.germ().eval(t) + alpha * (h.eval(s) - problem.base().eval(s));
        worst = std::max(worst, std::abs(h.eval(t) - rhs));
    }
    return worst;
}

} // namespace flab

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <vector>

#include "flab/parallel.hpp"
#include "flab/theorems.hpp"
#include "internal.hpp"

namespace flab {

namespace {

// The pairwise scan is quadratic in the window width; this cap keeps the
// certifying-window search bounded on dense grids.
constexpr std::int64_t kMaxWindowSteps = 4096;

// min over grid points of the best Hölder quotient reachable within W steps:
//   min_i max_{1 <= |j-i| <= W} |f_j - f_i| / (|j-i| h)^sigma.
double window_level_min(const std::vector<cplx>& v, double h, double sigma, std::int64_t w) {
    const auto m = static_cast<std::int64_t>(v.size());
    std::vector<double> inv_pow(static_cast<std::size_t>(w) + 1, 0.0);
    for (std::int64_t g = 1; g <= w; ++g)
        inv_pow[static_cast<std::size_t>(g)] = std::pow(static_cast<double>(g) * h, -sigma);

    double level = std::numeric_limits<double>::infinity();
    std::mutex mu;
    parallel_for(m, [&](std::int64_t begin, std::int64_t end) {
        double local = std::numeric_limits<double>::infinity();
        for (std::int64_t i = begin; i < end; ++i) {
            double best = 0.0;
            const std::int64_t g_hi = std::min(w, m - 1);
            for (std::int64_t g = 1; g <= g_hi; ++g) {
                double diff = 0.0;
                if (i >= g) diff = std::abs(v[static_cast<std::size_t>(i - g)] - v[static_cast<std::size_t>(i)]);
                if (i + g < m)
                    diff = std::max(diff, std::abs(v[static_cast<std::size_t>(i + g)] - v[static_cast<std::size_t>(i)]));
                best = std::max(best, diff * inv_pow[static_cast<std::size_t>(g)]);
            }
            local = std::min(local, best);
        }
        const std::lock_guard<std::mutex> lock(mu);
        level = std::min(level, local);
    });
    return level;
}

// Level minima along the halving ladder W, W/2, ..., 1.
std::vector<double> ladder_levels(const SampledFunction& f, double sigma, std::int64_t w0) {
    std::vector<double> levels;
    for (std::int64_t w = w0; w >= 1; w /= 2)
        levels.push_back(window_level_min(f.values(), f.step(), sigma, w));
    return levels;
}

double lower_oscillation(const SampledFunction& f, double sigma, double delta0) {
    const auto w0 = static_cast<std::int64_t>(std::floor(delta0 / f.step() + 1e-9));
    if (w0 < 1) return 0.0;
    require_input(w0 <= kMaxWindowSteps, "delta0 too wide for the oscillation scan");
    double lambda = std::numeric_limits<double>::infinity();
    for (double lv : ladder_levels(f, sigma, w0)) lambda = std::min(lambda, lv);
    return lambda;
}

} // namespace

double largest_certifying_delta0(const SampledFunction& f, double sigma) {
    require_input(sigma > 0.0 && sigma <= 1.0, "exponent must lie in (0, 1]");
    const std::int64_t w_top = std::min((f.size() - 1) / 2, kMaxWindowSteps);
    if (w_top < 1) return 0.0;
    const std::vector<double> levels = ladder_levels(f, sigma, w_top);
    // levels[a] belongs to window w_top >> a; the certificate for that window
    // needs every deeper level positive as well.
    double delta = 0.0;
    for (std::size_t a = levels.size(); a-- > 0;) {
        if (levels[a] <= 0.0) break;
        delta = static_cast<double>(w_top >> a) * f.step();
    }
    return delta;
}

TheoremConstants estimate_constants(const FractalProblem& problem, const SampledFunction& f_alpha,
                                    double sigma, std::optional<double> delta0) {
    require_input(sigma > 0.0 && sigma < 1.0, "exponent must lie in (0, 1)");
    const SampledFunction& f = problem.germ();
    const SampledFunction& b = problem.base();
    require_input(f_alpha.same_grid(f), "interpolant must live on the problem grid");

    TheoremConstants k;
    k.sigma = sigma;
    k.l_f = holder_seminorm(f, sigma).value;
    k.l_b = holder_seminorm(b, sigma).value;
    k.k_fba = holder_seminorm(f_alpha, sigma).value;
    k.m_bound = sup_norm(f_alpha);
    k.b_sup = sup_norm(b);

    k.c = 1.0;
    for (int i = 0; i < problem.partition().intervals(); ++i)
        k.c = std::min(k.c, problem.partition().ratio(i));

    k.l_alpha = 0.0;
    k.alpha_h_norm = 0.0;
    k.alpha_bv = 0.0;
    for (const ScalingFunction& alpha : problem.scalings()) {
        const double sem = detail::scaling_holder_seminorm(alpha, f, sigma);
        const double sup = detail::scaling_sup(alpha, f);
        k.l_alpha = std::max(k.l_alpha, sem);
        k.alpha_h_norm = std::max(k.alpha_h_norm, sup + sem);
        k.alpha_bv = std::max(k.alpha_bv, detail::scaling_bv_norm(alpha, f));
    }
    k.alpha_sup = problem.alpha_sup();

    const SampledFunction re = f.real_part();
    const SampledFunction im = f.imag_part();
    if (delta0) {
        require_input(*delta0 > 0.0 && *delta0 <= f.range(), "delta0 outside the domain");
        k.delta_0 = *delta0;
    } else {
        k.delta_0 = std::max(largest_certifying_delta0(re, sigma),
                             largest_certifying_delta0(im, sigma));
    }
    if (k.delta_0 > 0.0) {
        k.l_f1 = lower_oscillation(re, sigma, k.delta_0);
        k.l_f2 = lower_oscillation(im, sigma, k.delta_0);
    }
    return k;
}

} // namespace flab

#include "flab/seminorms.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "flab/parallel.hpp"

namespace flab {

namespace {

// Pair budget: exhaustive below this size, capped enumeration above.
constexpr std::int64_t kFullPairLimit = 4096;
constexpr std::int64_t kWindow = 512;
// Strided subgrid sized for ~1e6 long-range pairs (1415^2 / 2).
constexpr std::int64_t kStrideTarget = 1415;

double pair_max_full(const SampledFunction& f, double sigma) {
    const std::int64_t m = f.size();
    const double step = f.step();
    std::vector<double> inv_pow(static_cast<std::size_t>(m));
    for (std::int64_t g = 1; g < m; ++g)
        inv_pow[static_cast<std::size_t>(g)] =
            1.0 / std::pow(static_cast<double>(g) * step, sigma);

    std::mutex mu;
    double best = 0.0;
    parallel_for(m, [&](std::int64_t lo, std::int64_t hi) {
        double local = 0.0;
        for (std::int64_t i = lo; i < hi; ++i)
            for (std::int64_t j = i + 1; j < m; ++j) {
                const double r =
                    std::abs(f.value(j) - f.value(i)) * inv_pow[static_cast<std::size_t>(j - i)];
                local = std::max(local, r);
            }
        std::lock_guard<std::mutex> lock(mu);
        best = std::max(best, local);
    });
    return best;
}

double pair_max_capped(const SampledFunction& f, double sigma) {
    const std::int64_t m = f.size();
    const double step = f.step();

    // short-range window
    const std::int64_t w = std::min<std::int64_t>(kWindow, m - 1);
    std::vector<double> inv_pow(static_cast<std::size_t>(w) + 1);
    for (std::int64_t g = 1; g <= w; ++g)
        inv_pow[static_cast<std::size_t>(g)] =
            1.0 / std::pow(static_cast<double>(g) * step, sigma);

    std::mutex mu;
    double best = 0.0;
    parallel_for(m, [&](std::int64_t lo, std::int64_t hi) {
        double local = 0.0;
        for (std::int64_t i = lo; i < hi; ++i) {
            const std::int64_t jmax = std::min(m - 1, i + w);
            for (std::int64_t j = i + 1; j <= jmax; ++j) {
                const double r =
                    std::abs(f.value(j) - f.value(i)) * inv_pow[static_cast<std::size_t>(j - i)];
                local = std::max(local, r);
            }
        }
        std::lock_guard<std::mutex> lock(mu);
        best = std::max(best, local);
    });

    // power-of-two gap ladder beyond the window (refinement-stable)
    for (std::int64_t g = 2 * kWindow; g < m; g *= 2) {
        const double ip = 1.0 / std::pow(static_cast<double>(g) * step, sigma);
        for (std::int64_t i = 0; i + g < m; ++i)
            best = std::max(best, std::abs(f.value(i + g) - f.value(i)) * ip);
    }
    {
        const double ip = 1.0 / std::pow(static_cast<double>(m - 1) * step, sigma);
        best = std::max(best, std::abs(f.value(m - 1) - f.value(0)) * ip);
    }

    // strided long-range subgrid; power-of-two stride keeps the subgrid stable
    // under grid doubling
    std::int64_t stride = 1;
    while ((m - 1) / stride + 1 > kStrideTarget) stride *= 2;
    std::vector<std::int64_t> idx;
    for (std::int64_t i = 0; i < m; i += stride) idx.push_back(i);
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a + 1; b < idx.size(); ++b) {
            const std::int64_t g = idx[b] - idx[a];
            if (g <= w) continue;
            const double r = std::abs(f.value(idx[b]) - f.value(idx[a])) /
                             std::pow(static_cast<double>(g) * step, sigma);
            best = std::max(best, r);
        }
    return best;
}

} // namespace

SeminormEstimate holder_seminorm(const SampledFunction& f, double sigma) {
    require_input(sigma > 0.0 && sigma <= 1.0, "holder exponent must lie in (0, 1]");
    const double value =
        f.size() <= kFullPairLimit ? pair_max_full(f, sigma) : pair_max_capped(f, sigma);
    return {value, sigma, SeminormKind::holder_seminorm};
}

SeminormEstimate lipschitz_estimate(const SampledFunction& f) {
    SeminormEstimate est = holder_seminorm(f, 1.0);
    est.kind = SeminormKind::lipschitz;
    return est;
}

SeminormEstimate holder_full_norm(const SampledFunction& f, double sigma) {
    SeminormEstimate est = holder_seminorm(f, sigma);
    est.value += sup_norm(f);
    est.kind = SeminormKind::holder_full_norm;
    return est;
}

VariationResult total_variation(const SampledFunction& f) {
    double tv = 0.0; // exact grid sum; order fixed for reproducibility
    for (std::int64_t j = 0; j + 1 < f.size(); ++j) tv += std::abs(f.value(j + 1) - f.value(j));
    return {tv, std::abs(f.value(0)) + tv};
}

double sup_norm(const SampledFunction& f) {
    double best = 0.0;
    for (std::int64_t j = 0; j < f.size(); ++j) best = std::max(best, std::abs(f.value(j)));
    return best;
}

double sup_distance(const SampledFunction& f, const SampledFunction& g) {
    require_input(f.same_grid(g), "grid mismatch");
    double best = 0.0;
    for (std::int64_t j = 0; j < f.size(); ++j)
        best = std::max(best, std::abs(f.value(j) - g.value(j)));
    return best;
}

} // namespace flab

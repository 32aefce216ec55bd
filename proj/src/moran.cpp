#include <cmath>

#include "flab/errors.hpp"
#include "flab/moran.hpp"

namespace flab {

namespace {

// Phi(s) = sum c_k^s, strictly decreasing in s for ratios in (0, 1).
double phi(const std::vector<double>& ratios, double s) {
    double sum = 0.0;
    for (double c : ratios) sum += std::pow(c, s);
    return sum;
}

} // namespace

MoranRoot moran_solve(const std::vector<double>& ratios) {
    require_input(ratios.size() >= 2, "need at least two contraction ratios");
    for (double c : ratios)
        require_input(c > 0.0 && c < 1.0, "contraction ratios must lie in (0, 1)");

    // Phi(0) = #ratios > 1; grow the right end until Phi drops below 1.
    double lo = 0.0;
    double hi = 1.0;
    require_internal(phi(ratios, lo) > 1.0, "left bracket must start above 1");
    int doublings = 0;
    while (phi(ratios, hi) > 1.0) {
        lo = hi;
        hi *= 2.0;
        require_internal(++doublings < 64, "bracket growth did not terminate");
    }

    MoranRoot root;
    double prev = phi(ratios, lo);
    for (int iter = 0; iter < 100; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double v = phi(ratios, mid);
        require_internal(v <= prev + 1e-12, "sum failed to decrease in s");
        root.exponent = mid;
        root.residual = std::abs(v - 1.0);
        if (root.residual < 1e-12) return root;
        if (v > 1.0) {
            lo = mid;
            prev = v;
        } else {
            hi = mid;
        }
    }
    return root;
}

ContractionBounds::ContractionBounds(std::vector<double> lo, std::vector<double> hi)
    : lower(std::move(lo)), upper(std::move(hi)) {
    require_input(lower.size() == upper.size() && !lower.empty(), "bound lists must match");
    for (std::size_t k = 0; k < lower.size(); ++k)
        require_input(0.0 < lower[k] && lower[k] <= upper[k] && upper[k] < 1.0,
                      "need 0 < lower_k <= upper_k < 1");
}

std::pair<MoranRoot, MoranRoot> dimension_bounds(const ContractionBounds& bounds) {
    MoranRoot r = moran_solve(bounds.lower);
    MoranRoot big = moran_solve(bounds.upper);
    require_internal(r.exponent <= big.exponent + 1e-10, "lower root exceeded upper root");
    return {r, big};
}

double holder_upper_bound(double sigma) {
    require_input(sigma > 0.0 && sigma < 1.0, "exponent must lie in (0, 1)");
    return 2.0 - sigma;
}

} // namespace flab

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>

#include "flab/boxcount.hpp"
#include "flab/parallel.hpp"

namespace flab {

namespace {

struct ValueBox {
    double lo = 0.0;
    double hi = 0.0;
};

ValueBox merge(ValueBox a, ValueBox b) {
    return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

// Counts with a tiny relative slack so ratios a hair above an integer do not
// spill into an extra box.
std::int64_t boxes_for(double osc, double delta) {
    const double r = osc / delta;
    const auto m = static_cast<std::int64_t>(std::ceil(r - 1e-9));
    return std::max<std::int64_t>(1, m);
}

void require_real(const SampledFunction& f) {
    for (const cplx& v : f.values())
        require_input(v.imag() == 0.0, "column counting needs a real-valued function");
}

// Column boxes over [x0 + i*delta, x0 + (i+1)*delta] for the piecewise-linear
// interpolant: interior samples plus the interpolated values at both column
// boundaries. Adjacent columns share the boundary value exactly, so the value
// intervals of neighbours always intersect.
std::vector<ValueBox> column_boxes(const SampledFunction& f, double delta) {
    const std::int64_t m = f.size();
    const double h = f.step();
    const double range = f.range();
    const auto n_cols = static_cast<std::int64_t>(std::ceil(range / delta - 1e-9));

    auto boundary_value = [&](double u) -> double {
        // u is the boundary position in grid units; snap near-grid hits.
        const double r = std::round(u);
        if (std::abs(u - r) < 1e-9) return f.value(static_cast<std::int64_t>(r)).real();
        const auto j = static_cast<std::int64_t>(std::floor(u));
        const double w = u - static_cast<double>(j);
        const double a = f.value(j).real();
        return a + w * (f.value(j + 1).real() - a);
    };

    std::vector<ValueBox> cols(static_cast<std::size_t>(n_cols));
    parallel_for(n_cols, [&](std::int64_t begin, std::int64_t end) {
        for (std::int64_t i = begin; i < end; ++i) {
            const double u_lo = static_cast<double>(i) * delta / h;
            const double u_hi = std::min(static_cast<double>(i + 1) * delta / h,
                                         static_cast<double>(m - 1));
            const double b0 = boundary_value(u_lo);
            const double b1 = boundary_value(u_hi);
            ValueBox box{std::min(b0, b1), std::max(b0, b1)};
            const auto j_lo = static_cast<std::int64_t>(std::ceil(u_lo - 1e-9));
            const auto j_hi = static_cast<std::int64_t>(std::floor(u_hi + 1e-9));
            for (std::int64_t j = std::max<std::int64_t>(j_lo, 0);
                 j <= std::min(j_hi, m - 1); ++j) {
                const double v = f.value(j).real();
                box.lo = std::min(box.lo, v);
                box.hi = std::max(box.hi, v);
            }
            cols[static_cast<std::size_t>(i)] = box;
        }
    });
    return cols;
}

std::int64_t count_columns(const std::vector<ValueBox>& cols, double delta) {
    std::int64_t total = 0;
    for (const ValueBox& c : cols) total += boxes_for(c.hi - c.lo, delta);
    return total;
}

constexpr int kAxisBits = 21;
constexpr std::int64_t kAxisLimit = std::int64_t{1} << kAxisBits;

std::uint64_t pack_cell(std::int64_t ix, std::int64_t iy, std::int64_t iz) {
    return (static_cast<std::uint64_t>(ix) << (2 * kAxisBits)) |
           (static_cast<std::uint64_t>(iy) << kAxisBits) | static_cast<std::uint64_t>(iz);
}

std::vector<std::uint64_t> cell_keys(const GraphCloud& cloud, double delta) {
    require_input(!cloud.points.empty(), "box counting needs a nonempty cloud");
    require_input(delta > 0.0, "box size must be positive");
    const auto mn = cloud.min_corner();
    std::vector<std::uint64_t> keys(cloud.points.size());
    std::atomic<bool> overflow{false};
    parallel_for(static_cast<std::int64_t>(cloud.points.size()),
                 [&](std::int64_t begin, std::int64_t end) {
                     for (std::int64_t i = begin; i < end; ++i) {
                         const auto& p = cloud.points[static_cast<std::size_t>(i)];
                         std::int64_t c[3];
                         for (int a = 0; a < 3; ++a) {
                             const double u = (p[static_cast<std::size_t>(a)] - mn[static_cast<std::size_t>(a)]) / delta;
                             c[a] = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::floor(u)));
                             if (c[a] >= kAxisLimit) overflow.store(true, std::memory_order_relaxed);
                         }
                         if (!overflow.load(std::memory_order_relaxed))
                             keys[static_cast<std::size_t>(i)] = pack_cell(c[0], c[1], c[2]);
                     }
                 });
    require_input(!overflow.load(), "box size too small: cell index overflow");
    return keys;
}

std::int64_t distinct(std::vector<std::uint64_t>& keys) {
    std::sort(keys.begin(), keys.end());
    return static_cast<std::int64_t>(std::unique(keys.begin(), keys.end()) - keys.begin());
}

std::uint64_t halve_cell(std::uint64_t key) {
    const std::uint64_t mask = kAxisLimit - 1;
    const std::uint64_t ix = (key >> (2 * kAxisBits)) >> 1;
    const std::uint64_t iy = ((key >> kAxisBits) & mask) >> 1;
    const std::uint64_t iz = (key & mask) >> 1;
    return (ix << (2 * kAxisBits)) | (iy << kAxisBits) | iz;
}

double cloud_side(const GraphCloud& cloud) {
    const auto mn = cloud.min_corner();
    const auto mx = cloud.max_corner();
    double side = 0.0;
    for (int a = 0; a < 3; ++a)
        side = std::max(side, mx[static_cast<std::size_t>(a)] - mn[static_cast<std::size_t>(a)]);
    return side;
}

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

FitResult least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    require_internal(sxx > 0.0, "least squares needs distinct abscissae");
    if (syy == 0.0) throw numeric_error("degenerate-fit: all counts equal in the fitted range");
    FitResult fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - (fit.slope * x[i] + fit.intercept);
        ss_res += e * e;
    }
    fit.r_squared = 1.0 - ss_res / syy;
    return fit;
}

} // namespace

std::int64_t box_count_2d(const SampledFunction& f, double delta) {
    require_input(delta > 0.0, "box size must be positive");
    require_input(delta <= f.range() / 2.0, "delta-too-large: need delta <= range/2");
    require_input(f.step() <= delta / 10.0 * (1.0 + 1e-12),
                  "delta-too-small: need grid step <= delta/10");
    require_real(f);
    return count_columns(column_boxes(f, delta), delta);
}

std::int64_t box_count_3d(const GraphCloud& cloud, double delta) {
    auto keys = cell_keys(cloud, delta);
    return distinct(keys);
}

BoxCountSeries box_series_2d(const SampledFunction& f, int j_min, int j_max) {
    require_input(j_min >= 1 && j_max >= j_min && j_max <= 30, "bad scale range");
    const std::int64_t m = f.size();
    const std::int64_t n_fine = std::int64_t{1} << j_max;
    require_input(m - 1 >= 10 * n_fine, "delta-too-small: need grid step <= delta/10");
    require_input(static_cast<double>(n_fine) * static_cast<double>(m - 1) < 9e15,
                  "scale range too deep for this grid");
    require_real(f);

    // Finest-level columns with integer-exact boundaries: boundary i sits at
    // grid position i*(m-1)/n_fine; both neighbours use the identical
    // interpolated value, so coarser boxes are exact unions of finer ones.
    std::vector<ValueBox> cols(static_cast<std::size_t>(n_fine));
    parallel_for(n_fine, [&](std::int64_t begin, std::int64_t end) {
        auto boundary_value = [&](std::int64_t num) -> double {
            const std::int64_t j = num / n_fine;
            const std::int64_t rem = num % n_fine;
            const double a = f.value(j).real();
            if (rem == 0) return a;
            const double w = static_cast<double>(rem) / static_cast<double>(n_fine);
            return a + w * (f.value(j + 1).real() - a);
        };
        for (std::int64_t i = begin; i < end; ++i) {
            const std::int64_t lo_num = i * (m - 1);
            const std::int64_t hi_num = (i + 1) * (m - 1);
            const double b0 = boundary_value(lo_num);
            const double b1 = boundary_value(hi_num);
            ValueBox box{std::min(b0, b1), std::max(b0, b1)};
            const std::int64_t j_lo = (lo_num + n_fine - 1) / n_fine;
            const std::int64_t j_hi = hi_num / n_fine;
            for (std::int64_t j = j_lo; j <= j_hi; ++j) {
                const double v = f.value(j).real();
                box.lo = std::min(box.lo, v);
                box.hi = std::max(box.hi, v);
            }
            cols[static_cast<std::size_t>(i)] = box;
        }
    });

    std::vector<double> deltas;
    std::vector<std::int64_t> counts;
    for (int j = j_max;; --j) {
        const double delta = f.range() * std::ldexp(1.0, -j);
        deltas.push_back(delta);
        counts.push_back(count_columns(cols, delta));
        if (j == j_min) break;
        std::vector<ValueBox> next(cols.size() / 2);
        for (std::size_t i = 0; i < next.size(); ++i) next[i] = merge(cols[2 * i], cols[2 * i + 1]);
        cols = std::move(next);
    }
    std::reverse(deltas.begin(), deltas.end());
    std::reverse(counts.begin(), counts.end());
    for (std::size_t i = 1; i < counts.size(); ++i)
        require_internal(counts[i] >= counts[i - 1], "column counts lost monotonicity");
    return {std::move(deltas), std::move(counts), BoxCountMethod::column_oscillation_2d};
}

BoxCountSeries box_series_3d(const GraphCloud& cloud, int j_min, int j_max) {
    require_input(j_min >= 0 && j_max >= j_min && j_max <= 20, "bad scale range");
    const double side = cloud_side(cloud);
    require_input(side > 0.0, "degenerate cloud: zero extent");

    auto keys = cell_keys(cloud, side * std::ldexp(1.0, -j_max));
    std::vector<double> deltas;
    std::vector<std::int64_t> counts;
    for (int j = j_max;; --j) {
        deltas.push_back(side * std::ldexp(1.0, -j));
        counts.push_back(distinct(keys));
        if (j == j_min) break;
        for (std::uint64_t& k : keys) k = halve_cell(k);
    }
    std::reverse(deltas.begin(), deltas.end());
    std::reverse(counts.begin(), counts.end());
    for (std::size_t i = 1; i < counts.size(); ++i)
        require_internal(counts[i] >= counts[i - 1], "cube counts lost monotonicity");
    return {std::move(deltas), std::move(counts), BoxCountMethod::cube_grid_3d};
}

int max_scale_2d(const SampledFunction& f) {
    int j = 0;
    while ((f.size() - 1) >> (j + 1) >= 10) ++j;
    return j;
}

int max_scale_3d(const GraphCloud& cloud) {
    int j = 0;
    const auto n = static_cast<std::int64_t>(cloud.points.size());
    while (n >> (j + 1) >= 10 && j < 20) ++j;
    return j;
}

DimensionEstimate estimate_dimension(const BoxCountSeries& series,
                                     std::optional<std::pair<int, int>> fit_range) {
    const auto n = static_cast<int>(series.deltas.size());
    require_input(series.counts.size() == series.deltas.size(), "series sizes disagree");
    require_input(n >= 4, "need at least 4 scales");
    int first = 1, last = n - 2;
    if (fit_range) {
        first = fit_range->first;
        last = fit_range->second;
        require_input(first >= 0 && last < n && first < last, "bad fit range");
    }
    std::vector<double> x, y;
    for (int i = first; i <= last; ++i) {
        x.push_back(-std::log(series.deltas[static_cast<std::size_t>(i)]));
        y.push_back(std::log(static_cast<double>(series.counts[static_cast<std::size_t>(i)])));
    }
    const FitResult fit = least_squares(x, y);
    DimensionEstimate est;
    est.slope = fit.slope;
    est.intercept = fit.intercept;
    est.r_squared = fit.r_squared;
    est.series = series;
    est.fit_first = first;
    est.fit_last = last;
    return est;
}

SeminormEstimate holder_exponent_estimate(const SampledFunction& f) {
    const std::int64_t m = f.size();
    require_input(m >= (1 << 10) + 1, "insufficient-resolution: need at least 1025 samples");

    // Oscillation pyramid over aligned windows of 2^a grid steps; windows share
    // their boundary sample, so each level is an exact pairwise merge.
    struct Window {
        double re_lo, re_hi, im_lo, im_hi;
    };
    std::int64_t nw = m - 1;
    std::vector<Window> win(static_cast<std::size_t>(nw));
    for (std::int64_t i = 0; i < nw; ++i) {
        const cplx a = f.value(i), b = f.value(i + 1);
        win[static_cast<std::size_t>(i)] = {std::min(a.real(), b.real()), std::max(a.real(), b.real()),
                                            std::min(a.imag(), b.imag()), std::max(a.imag(), b.imag())};
    }

    std::vector<double> widths, oscs;
    for (int a = 1; (m - 1) >> a >= 4; ++a) {
        const std::int64_t next_n = nw / 2;
        for (std::int64_t i = 0; i < next_n; ++i) {
            const Window& p = win[static_cast<std::size_t>(2 * i)];
            const Window& q = win[static_cast<std::size_t>(2 * i + 1)];
            win[static_cast<std::size_t>(i)] = {std::min(p.re_lo, q.re_lo), std::max(p.re_hi, q.re_hi),
                                                std::min(p.im_lo, q.im_lo), std::max(p.im_hi, q.im_hi)};
        }
        nw = next_n;
        if (a < 2) continue;
        double osc = 0.0;
        for (std::int64_t i = 0; i < nw; ++i) {
            const Window& w = win[static_cast<std::size_t>(i)];
            osc = std::max(osc, std::hypot(w.re_hi - w.re_lo, w.im_hi - w.im_lo));
        }
        if (osc <= 0.0) throw numeric_error("degenerate-oscillation: function is constant");
        widths.push_back(std::ldexp(f.step(), a));
        oscs.push_back(osc);
    }
    require_input(widths.size() >= 4, "insufficient-resolution: need at least 4 scales");

    std::vector<double> x, y;
    for (std::size_t i = 0; i < widths.size(); ++i) {
        x.push_back(std::log(widths[i]));
        y.push_back(std::log(oscs[i]));
    }
    const FitResult fit = least_squares(x, y);
    SeminormEstimate est;
    est.kind = SeminormKind::holder_seminorm;
    est.exponent = std::clamp(fit.slope, 1e-3, 1.0);
    est.value = std::exp(fit.intercept);
    return est;
}

} // namespace flab

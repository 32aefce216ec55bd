#include "flab/types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace flab {

Partition::Partition(std::vector<double> knots) : knots_(std::move(knots)) {
    require_input(knots_.size() >= 3, "partition needs at least 3 knots");
    for (double x : knots_)
        require_input(std::isfinite(x), "partition knots must be finite");
    for (std::size_t i = 0; i + 1 < knots_.size(); ++i)
        require_input(knots_[i] < knots_[i + 1], "partition knots must be strictly increasing");
}

bool Partition::is_uniform(double rel_tol) const {
    const double h = (x_last() - x_first()) / intervals();
    for (int k = 0; k < intervals(); ++k)
        if (std::abs((knot(k + 1) - knot(k)) - h) > rel_tol * length()) return false;
    return true;
}

SampledFunction::SampledFunction(double x0, double x1, std::vector<cplx> values)
    : x0_(x0), x1_(x1), values_(std::move(values)) {
    require_input(std::isfinite(x0_) && std::isfinite(x1_) && x0_ < x1_,
                  "sampled function needs a finite domain with x0 < x1");
    require_input(values_.size() >= 2, "sampled function needs at least 2 samples");
    for (const cplx& v : values_)
        require_input(std::isfinite(v.real()) && std::isfinite(v.imag()),
                      "sampled function values must be finite");
}

cplx SampledFunction::eval(double tq) const {
    if (tq <= x0_) return values_.front();
    if (tq >= x1_) return values_.back();
    const double pos = (tq - x0_) / (x1_ - x0_) * static_cast<double>(size() - 1);
    auto lo = static_cast<std::int64_t>(pos);
    if (lo >= size() - 1) lo = size() - 2;
    const double w = pos - static_cast<double>(lo);
    const cplx a = values_[static_cast<std::size_t>(lo)];
    const cplx b = values_[static_cast<std::size_t>(lo + 1)];
    return a + w * (b - a);
}

SampledFunction SampledFunction::real_part() const {
    std::vector<cplx> v(values_.size());
    std::transform(values_.begin(), values_.end(), v.begin(),
                   [](cplx z) { return cplx(z.real(), 0.0); });
    return {x0_, x1_, std::move(v)};
}

SampledFunction SampledFunction::imag_part() const {
    std::vector<cplx> v(values_.size());
    std::transform(values_.begin(), values_.end(), v.begin(),
                   [](cplx z) { return cplx(z.imag(), 0.0); });
    return {x0_, x1_, std::move(v)};
}

bool SampledFunction::same_grid(const SampledFunction& other, double rel_tol) const {
    const double scale = std::max(std::abs(range()), std::abs(other.range()));
    return size() == other.size() && std::abs(x0_ - other.x0_) <= rel_tol * scale &&
           std::abs(x1_ - other.x1_) <= rel_tol * scale;
}

namespace {

SampledFunction zip(const SampledFunction& f, const SampledFunction& g, bool plus) {
    require_input(f.same_grid(g), "grid mismatch");
    std::vector<cplx> v(static_cast<std::size_t>(f.size()));
    for (std::int64_t j = 0; j < f.size(); ++j)
        v[static_cast<std::size_t>(j)] = plus ? f.value(j) + g.value(j) : f.value(j) - g.value(j);
    return {f.x0(), f.x1(), std::move(v)};
}

} // namespace

SampledFunction add(const SampledFunction& f, const SampledFunction& g) { return zip(f, g, true); }

SampledFunction subtract(const SampledFunction& f, const SampledFunction& g) {
    return zip(f, g, false);
}

SampledFunction scale(const SampledFunction& f, cplx w) {
    std::vector<cplx> v(static_cast<std::size_t>(f.size()));
    for (std::int64_t j = 0; j < f.size(); ++j) v[static_cast<std::size_t>(j)] = w * f.value(j);
    return {f.x0(), f.x1(), std::move(v)};
}

std::array<double, 3> GraphCloud::min_corner() const {
    require_input(!points.empty(), "empty cloud");
    std::array<double, 3> c{std::numeric_limits<double>::infinity(),
                            std::numeric_limits<double>::infinity(),
                            std::numeric_limits<double>::infinity()};
    for (const auto& p : points)
        for (int i = 0; i < 3; ++i) c[static_cast<std::size_t>(i)] =
            std::min(c[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(i)]);
    return c;
}

std::array<double, 3> GraphCloud::max_corner() const {
    require_input(!points.empty(), "empty cloud");
    std::array<double, 3> c{-std::numeric_limits<double>::infinity(),
                            -std::numeric_limits<double>::infinity(),
                            -std::numeric_limits<double>::infinity()};
    for (const auto& p : points)
        for (int i = 0; i < 3; ++i) c[static_cast<std::size_t>(i)] =
            std::max(c[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(i)]);
    return c;
}

} // namespace flab

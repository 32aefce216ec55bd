#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "flab/errors.hpp"

namespace flab {

using cplx = std::complex<double>;

/// Strictly increasing knot vector x_1 < x_2 < ... < x_N, N >= 3, so every
/// subinterval map is a strict contraction.
class Partition {
public:
    explicit Partition(std::vector<double> knots);

    int size() const { return static_cast<int>(knots_.size()); }
    int intervals() const { return size() - 1; }
    double knot(int i) const { return knots_[static_cast<std::size_t>(i)]; }
    const std::vector<double>& knots() const { return knots_; }
    double x_first() const { return knots_.front(); }
    double x_last() const { return knots_.back(); }
    double length() const { return x_last() - x_first(); }

    /// a_k = (x_{k+1} - x_k) / (x_N - x_1), the contraction ratio of interval k (0-based).
    double ratio(int k) const { return (knot(k + 1) - knot(k)) / length(); }

    bool is_uniform(double rel_tol = 1e-12) const;

private:
    std::vector<double> knots_;
};

/// Complex-valued function sampled on a uniform grid over [x0, x1].
/// Grid point j sits at t(j) = x0 + (x1 - x0) * j / (M - 1); all values finite.
class SampledFunction {
public:
    SampledFunction(double x0, double x1, std::vector<cplx> values);

    std::int64_t size() const { return static_cast<std::int64_t>(values_.size()); }
    double x0() const { return x0_; }
    double x1() const { return x1_; }
    double range() const { return x1_ - x0_; }
    double step() const { return (x1_ - x0_) / static_cast<double>(size() - 1); }
    double t(std::int64_t j) const {
        return x0_ + (x1_ - x0_) * (static_cast<double>(j) / static_cast<double>(size() - 1));
    }
    cplx value(std::int64_t j) const { return values_[static_cast<std::size_t>(j)]; }
    const std::vector<cplx>& values() const { return values_; }

    /// Piecewise-linear evaluation; t clamped to the domain.
    cplx eval(double t) const;

    SampledFunction real_part() const;
    SampledFunction imag_part() const;
    bool same_grid(const SampledFunction& other, double rel_tol = 1e-12) const;

private:
    double x0_, x1_;
    std::vector<cplx> values_;
};

SampledFunction add(const SampledFunction& f, const SampledFunction& g);
SampledFunction subtract(const SampledFunction& f, const SampledFunction& g);
SampledFunction scale(const SampledFunction& f, cplx w);

/// Finite point cloud in 2 or 3 dimensions (z = 0 when dim == 2).
struct GraphCloud {
    int dim = 2;
    std::vector<std::array<double, 3>> points;

    std::array<double, 3> min_corner() const;
    std::array<double, 3> max_corner() const;
};

} // namespace flab

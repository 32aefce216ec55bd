#include <cmath>

#include "flab/fif.hpp"
#include "flab/seminorms.hpp"

namespace flab {

ScalingFunction ScalingFunction::make_constant(cplx value) {
    require_input(std::abs(value) < 1.0, "scaling-too-large: |alpha| must stay below 1");
    ScalingFunction s;
    s.form_ = Form::constant;
    s.intercept_ = value;
    return s;
}

ScalingFunction ScalingFunction::make_affine(cplx slope, cplx intercept) {
    ScalingFunction s;
    s.form_ = Form::affine_in_t;
    s.slope_ = slope;
    s.intercept_ = intercept;
    return s; // magnitude checked against the working grid at problem build
}

ScalingFunction ScalingFunction::make_sampled(SampledFunction samples) {
    require_input(sup_norm(samples) < 1.0, "scaling-too-large: sup|alpha| must stay below 1");
    ScalingFunction s;
    s.form_ = Form::sampled;
    s.samples_ = std::move(samples);
    return s;
}

cplx ScalingFunction::eval(double t) const {
    switch (form_) {
    case Form::constant: return intercept_;
    case Form::affine_in_t: return slope_ * t + intercept_;
    case Form::sampled: return samples_->eval(t);
    }
    throw internal_error("unhandled scaling form");
}

const SampledFunction& ScalingFunction::samples() const {
    require_internal(samples_.has_value(), "scaling has no samples");
    return *samples_;
}

double ScalingFunction::sup_on_grid(const SampledFunction& grid) const {
    if (form_ == Form::constant) return std::abs(intercept_);
    double best = 0.0;
    for (std::int64_t j = 0; j < grid.size(); ++j)
        best = std::max(best, std::abs(eval(grid.t(j))));
    return best;
}

FractalProblem::FractalProblem(Partition partition, SampledFunction germ, SampledFunction base,
                               std::vector<ScalingFunction> scalings,
                               std::optional<std::vector<cplx>> values)
    : partition_(std::move(partition)), germ_(std::move(germ)), base_(std::move(base)),
      scalings_(std::move(scalings)) {
    const double range = partition_.length();
    require_input(germ_.same_grid(base_), "germ and base must share the working grid");
    require_input(std::abs(germ_.x0() - partition_.x_first()) <= 1e-12 * range &&
                      std::abs(germ_.x1() - partition_.x_last()) <= 1e-12 * range,
                  "working grid must span the partition interval");
    require_input(static_cast<int>(scalings_.size()) == partition_.intervals(),
                  "need one scaling per subinterval");

    // the uniform working grid has to contain every knot
    const auto m = germ_.size();
    knot_index_.reserve(static_cast<std::size_t>(partition_.size()));
    for (int i = 0; i < partition_.size(); ++i) {
        const double pos =
            (partition_.knot(i) - germ_.x0()) / germ_.range() * static_cast<double>(m - 1);
        const double snapped = std::round(pos);
        require_input(std::abs(pos - snapped) <= 1e-6, "working grid must contain every knot");
        knot_index_.push_back(static_cast<std::int64_t>(snapped));
    }

    const double scale = std::max(1.0, sup_norm(germ_));
    require_input(std::abs(germ_.value(0) - base_.value(0)) <= 1e-10 * scale &&
                      std::abs(germ_.value(m - 1) - base_.value(m - 1)) <= 1e-10 * scale,
                  "endpoint-mismatch: base must match the germ at both endpoints");
    require_input(sup_distance(germ_, base_) > 1e-12,
                  "base-equals-germ: base must differ from the germ");

    for (const auto& s : scalings_)
        alpha_sup_ = std::max(alpha_sup_, s.sup_on_grid(germ_));
    require_input(alpha_sup_ < 1.0, "scaling-too-large: sup|alpha| must stay below 1");

    if (values.has_value()) {
        require_input(static_cast<int>(values->size()) == partition_.size(),
                      "need one value per knot");
        for (int i = 0; i < partition_.size(); ++i) {
            const cplx at_knot = germ_.value(knot_index_[static_cast<std::size_t>(i)]);
            require_input(std::abs((*values)[static_cast<std::size_t>(i)] - at_knot) <=
                              1e-9 * scale,
                          "values must match the germ at the knots");
        }
        values_ = std::move(*values);
    } else {
        values_.reserve(static_cast<std::size_t>(partition_.size()));
        for (int i = 0; i < partition_.size(); ++i)
            values_.push_back(germ_.value(knot_index_[static_cast<std::size_t>(i)]));
    }
}

cplx IFSSystem::psi(int k, double t, cplx y) const {
    const cplx a = problem.scalings()[static_cast<std::size_t>(k)].eval(t);
    return a * y + problem.germ().eval(maps[static_cast<std::size_t>(k)](t)) -
           a * problem.base().eval(t);
}

IFSSystem build_ifs(const FractalProblem& problem) {
    const Partition& part = problem.partition();
    const double range = part.length();
    std::vector<AffineMapX> maps;
    maps.reserve(static_cast<std::size_t>(part.intervals()));
    for (int k = 0; k < part.intervals(); ++k) {
        AffineMapX map{part.ratio(k), 0.0};
        map.d = part.knot(k) - map.a * part.x_first();
        // endpoint conditions P_k(x_1) = x_k, P_k(x_N) = x_{k+1}
        require_internal(std::abs(map(part.x_first()) - part.knot(k)) <= 1e-12 * range &&
                             std::abs(map(part.x_last()) - part.knot(k + 1)) <= 1e-12 * range,
                         "affine x-map endpoint condition violated");
        maps.push_back(map);
    }
    // open subintervals are pairwise disjoint by strict knot ordering; the
    // shared boundary knots are the only contact points
    for (std::size_t k = 0; k + 1 < maps.size(); ++k)
        require_internal(part.knot(static_cast<int>(k) + 1) <
                             part.knot(static_cast<int>(k) + 2),
                         "subinterval overlap");

    IFSSystem ifs{std::move(maps), problem};

    // join conditions of the y-maps at the data points
    const auto& y = problem.values();
    const double scale = std::max(1.0, sup_norm(problem.germ()));
    for (int k = 0; k < part.intervals(); ++k) {
        const cplx left = ifs.psi(k, part.x_first(), y.front());
        const cplx right = ifs.psi(k, part.x_last(), y.back());
        require_internal(std::abs(left - y[static_cast<std::size_t>(k)]) <= 1e-10 * scale,
                         "y-map join condition violated at left knot");
        require_internal(std::abs(right - y[static_cast<std::size_t>(k) + 1]) <= 1e-10 * scale,
                         "y-map join condition violated at right knot");
    }
    return ifs;
}

} // namespace flab

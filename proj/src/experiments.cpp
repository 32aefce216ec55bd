#include <algorithm>
#include <cmath>
#include <cstdio>

#include "flab/generators.hpp"
#include "flab/theorems.hpp"
#include "internal.hpp"

namespace flab {

namespace {

std::string fmt1(const char* pattern, double a) {
    char buf[160];
    std::snprintf(buf, sizeof buf, pattern, a);
    return buf;
}

void require_real_valued(const SampledFunction& f, const char* what) {
    for (const cplx& v : f.values())
        require_input(v.imag() == 0.0, std::string(what) + " must be real-valued");
}

} // namespace

TheoremReport compare_graph_dimensions(const SampledFunction& g, const SampledFunction& h,
                                       const std::string& theorem_id, double tol) {
    require_input(g.same_grid(h), "both functions must share a grid");
    require_real_valued(g, "first function");
    require_real_valued(h, "second function");

    std::vector<cplx> combo(static_cast<std::size_t>(g.size()));
    for (std::int64_t j = 0; j < g.size(); ++j)
        combo[static_cast<std::size_t>(j)] = cplx{g.value(j).real(), h.value(j).real()};
    const SampledFunction complex_view(g.x0(), g.x1(), std::move(combo));
    const SampledFunction sum = add(g, h);

    const GraphCloud cloud_complex = graph_cloud(complex_view, GraphMode::complex_3d);
    const GraphCloud cloud_pair = graph_cloud_pair(g, h);
    const int j3 = std::min(max_scale_3d(cloud_complex), 12);
    const BoxCountSeries s_complex = box_series_3d(cloud_complex, 1, j3);
    const BoxCountSeries s_pair = box_series_3d(cloud_pair, 1, j3);

    bool counts_equal = s_complex.counts.size() == s_pair.counts.size();
    for (std::size_t i = 0; counts_equal && i < s_complex.counts.size(); ++i)
        counts_equal = s_complex.counts[i] == s_pair.counts[i];

    const DimensionEstimate d_complex = estimate_dimension(s_complex);
    const DimensionEstimate d_pair = estimate_dimension(s_pair);
    const DimensionEstimate d_g = detail::dim2d(g, 14);
    const DimensionEstimate d_h = detail::dim2d(h, 14);
    const DimensionEstimate d_sum = detail::dim2d(sum, 14);
    const double lip_h = lipschitz_estimate(h).value;
    const bool collapse = lip_h <= 10.0;

    TheoremReport rep;
    rep.theorem_id = theorem_id;
    rep.hypothesis_values = {{"tol", tol},
                             {"lipschitz_h", lip_h},
                             {"collapse_applies", collapse ? 1.0 : 0.0}};
    rep.hypothesis_satisfied = true;
    rep.predicted.equality = true;
    rep.observed = {{"dim_g", d_g.slope},
                    {"dim_h", d_h.slope},
                    {"dim_sum", d_sum.slope},
                    {"dim_complex3d", d_complex.slope},
                    {"dim_pair3d", d_pair.slope},
                    {"counts_equal", counts_equal ? 1.0 : 0.0}};

    bool ok = counts_equal;
    ok = ok && d_complex.slope >= std::max(d_g.slope, d_h.slope) - tol;
    if (collapse) {
        const double dims[] = {d_complex.slope, d_pair.slope, d_g.slope, d_sum.slope};
        const auto [mn, mx] = std::minmax_element(std::begin(dims), std::end(dims));
        ok = ok && (*mx - *mn) <= tol;
    }
    rep.verdict = ok ? Verdict::consistent : Verdict::inconsistent;

    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "g %.4g, h %.4g, sum %.4g, 3d %.4g/%.4g, counts %s", d_g.slope, d_h.slope,
                  d_sum.slope, d_complex.slope, d_pair.slope, counts_equal ? "equal" : "DIFFER");
    rep.summary = buf;
    return rep;
}

TheoremReport peano_remark_experiment(int depth) {
    require_input(depth >= 6 && depth <= 10, "depth must lie in [6, 10]");

    struct Run {
        double dim_x, dim_y, dim_3d;
    };
    auto run_at = [](int d) -> Run {
        const std::int64_t m = (std::int64_t{1} << (2 * (d + 1))) + 1;
        const GeneratorSpec gx{GeneratorKind::hilbert_coordinate_1, {static_cast<double>(d)}};
        const GeneratorSpec gy{GeneratorKind::hilbert_coordinate_2, {static_cast<double>(d)}};
        const SampledFunction fx = sample(gx, 0.0, 1.0, m);
        const SampledFunction fy = sample(gy, 0.0, 1.0, m);
        const DimensionEstimate dx = detail::dim2d(fx, 12);
        const DimensionEstimate dy = detail::dim2d(fy, 12);
        const DimensionEstimate d3 = detail::dim3d(graph_cloud_pair(fx, fy), d - 1);
        return {dx.slope, dy.slope, d3.slope};
    };
    const Run now = run_at(depth);
    const Run prev = run_at(depth - 1);

    TheoremReport rep;
    rep.theorem_id = "peano-remark";
    rep.hypothesis_values = {{"depth", static_cast<double>(depth)},
                             {"floor_3d", depth >= 8 ? 1.85 : 0.0}};
    rep.hypothesis_satisfied = true;
    rep.predicted.interval = {1.5 - kDimensionTol, 1.5 + kDimensionTol};
    rep.observed = {{"dim_x", now.dim_x},
                    {"dim_y", now.dim_y},
                    {"dim_graph3d", now.dim_3d},
                    {"dim_graph3d_prev", prev.dim_3d}};

    bool ok = now.dim_x >= rep.predicted.interval->first &&
              now.dim_x <= rep.predicted.interval->second &&
              now.dim_y >= rep.predicted.interval->first &&
              now.dim_y <= rep.predicted.interval->second;
    ok = ok && now.dim_3d >= prev.dim_3d - 0.02;
    if (depth >= 8) ok = ok && now.dim_3d >= 1.85;
    rep.verdict = ok ? Verdict::consistent : Verdict::inconsistent;
    rep.summary = fmt1("coordinate graphs near 1.5, filled graph at %.4g", now.dim_3d) +
                  fmt1(" (previous depth %.4g)", prev.dim_3d);
    return rep;
}

} // namespace flab

#include <cmath>
#include <random>

#include "flab/fif.hpp"

namespace flab {

GraphCloud chaos_game(const IFSSystem& ifs, std::int64_t n_points, std::uint64_t seed,
                      std::int64_t burn_in) {
    require_input(n_points >= 1, "chaos game needs at least one point");
    require_input(burn_in >= 0, "burn-in must be nonnegative");
    const auto& prob = ifs.problem;
    const auto n_maps = static_cast<std::uint64_t>(ifs.maps.size());

    // Start on the attractor: the first interpolation node belongs to it.
    double t = prob.partition().x_first();
    cplx y = prob.values().front();

    // Plain modulo keeps the stream identical across platforms; the bias for
    // n_maps far below 2^64 is immaterial here.
    std::mt19937_64 rng(seed);
    const double lo = prob.partition().x_first();
    const double hi = prob.partition().x_last();
    const double slack = 1e-9 * prob.partition().length();

    GraphCloud cloud;
    cloud.dim = 3; // (t, re, im) triples even when the attractor stays real
    cloud.points.reserve(static_cast<std::size_t>(n_points));
    for (std::int64_t i = 0; i < burn_in + n_points; ++i) {
        const int k = static_cast<int>(rng() % n_maps);
        y = ifs.psi(k, t, y);
        t = ifs.maps[static_cast<std::size_t>(k)](t);
        if (i < burn_in) continue;
        require_internal(t >= lo - slack && t <= hi + slack,
                         "chaos game escaped the base interval");
        cloud.points.push_back({t, y.real(), y.imag()});
    }
    return cloud;
}

GraphCloud graph_cloud(const SampledFunction& f, GraphMode mode) {
    require_input(mode != GraphMode::pair_3d, "pair mode needs two functions");
    GraphCloud cloud;
    cloud.dim = mode == GraphMode::complex_3d ? 3 : 2;
    cloud.points.reserve(static_cast<std::size_t>(f.size()));
    for (std::int64_t j = 0; j < f.size(); ++j) {
        const cplx v = f.value(j);
        switch (mode) {
        case GraphMode::real_2d: cloud.points.push_back({f.t(j), v.real(), 0.0}); break;
        case GraphMode::imag_2d: cloud.points.push_back({f.t(j), v.imag(), 0.0}); break;
        default: cloud.points.push_back({f.t(j), v.real(), v.imag()}); break;
        }
    }
    return cloud;
}

GraphCloud graph_cloud_pair(const SampledFunction& g, const SampledFunction& h) {
    require_input(g.same_grid(h), "paired graph needs a shared grid");
    GraphCloud cloud;
    cloud.dim = 3;
    cloud.points.reserve(static_cast<std::size_t>(g.size()));
    for (std::int64_t j = 0; j < g.size(); ++j)
        cloud.points.push_back({g.t(j), g.value(j).real(), h.value(j).real()});
    return cloud;
}

} // namespace flab

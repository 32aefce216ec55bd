#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "flab/errors.hpp"
#include "flab/fif.hpp"
#include "flab/generators.hpp"
#include "flab/moran.hpp"
#include "flab/seminorms.hpp"
#include "flab/theorems.hpp"
#include "flab/types.hpp"

using namespace flab;

namespace {

SampledFunction sample_text(const std::string& text, std::int64_t m) {
    return sample_terms(parse_terms_text(text), 0.0, 1.0, m);
}

SampledFunction constant_fn(cplx v, std::int64_t m) {
    return SampledFunction(0.0, 1.0, std::vector<cplx>(static_cast<std::size_t>(m), v));
}

// Two-interval problem on [0, 1]: germ from text, constant base pinned to the
// germ's endpoint value (the germs used here are 1-periodic so both ends agree).
FractalProblem two_interval_problem(const std::string& germ_text,
                                    const std::vector<ScalingFunction>& scalings, std::int64_t m) {
    SampledFunction f = sample_text(germ_text, m);
    SampledFunction b = constant_fn(f.value(0), m);
    return FractalProblem(Partition({0.0, 0.5, 1.0}), f, b, scalings);
}

FractalProblem two_interval_problem(const std::string& germ_text, cplx alpha, std::int64_t m) {
    std::vector<ScalingFunction> scalings(2, ScalingFunction::make_constant(alpha));
    return two_interval_problem(germ_text, scalings, m);
}

double field(const std::vector<std::pair<std::string, double>>& kv, const std::string& key) {
    for (const auto& [k, v] : kv)
        if (k == key) return v;
    FAIL("missing report field " << key);
    return 0.0;
}

TheoremConstants hand_constants() {
    TheoremConstants k;
    k.c = 0.5;
    k.sigma = 0.5;
    k.l_f = 2.0;
    k.l_f1 = 1.0;
    k.l_f2 = 1.0;
    k.delta_0 = 0.25;
    k.b_sup = 1.0;
    k.m_bound = 1.0;
    k.k_fba = 1.0;
    k.l_b = 0.0;
    k.l_alpha = 0.0;
    k.alpha_h_norm = 0.1;
    k.alpha_sup = 0.1;
    k.alpha_bv = 0.1;
    return k;
}

} // namespace

TEST_CASE("estimated constants match the seminorm primitives") {
    const std::int64_t m = 4097;
    const FractalProblem problem = two_interval_problem("weierstrass:2,0.5", cplx(0.2, 0.1), m);
    const auto [h, fp] = alpha_fractal(problem);
    REQUIRE(fp.converged);

    const TheoremConstants k = estimate_constants(problem, h, 0.5);
    CHECK(k.sigma == 0.5);
    CHECK(k.c == 0.5);
    CHECK(k.l_f == holder_seminorm(problem.germ(), 0.5).value);
    CHECK(k.l_b == 0.0);
    CHECK(k.k_fba == holder_seminorm(h, 0.5).value);
    CHECK(k.m_bound == sup_norm(h));
    CHECK(k.b_sup == sup_norm(problem.base()));

    const double a = std::abs(cplx(0.2, 0.1));
    CHECK(k.alpha_sup == doctest::Approx(a).epsilon(1e-14));
    CHECK(k.l_alpha == 0.0);
    CHECK(k.alpha_h_norm == doctest::Approx(a).epsilon(1e-14));
    CHECK(k.alpha_bv == doctest::Approx(a).epsilon(1e-14));

    // The germ oscillates at every scale, so some dyadic window certifies a
    // positive oscillation floor for the real part; the flat imaginary part
    // certifies nothing.
    CHECK(k.delta_0 > 0.0);
    CHECK(k.delta_0 <= 1.0);
    CHECK(k.l_f1 > 0.0);
    CHECK(k.l_f2 == 0.0);

    const TheoremConstants k2 = estimate_constants(problem, h, 0.5, 0.125);
    CHECK(k2.delta_0 == 0.125);
    CHECK(k2.l_f1 > 0.0);
}

TEST_CASE("estimated constants for affine scalings") {
    const std::int64_t m = 2049;
    std::vector<ScalingFunction> scalings(
        2, ScalingFunction::make_affine(cplx(0.02, 0.0), cplx(0.01, 0.0)));
    const FractalProblem problem = two_interval_problem("trig-sum:1,1,0", scalings, m);
    const auto [h, fp] = alpha_fractal(problem);

    const TheoremConstants k = estimate_constants(problem, h, 0.5);
    // |alpha(0)| + |slope| * range and |slope| * range^{1 - sigma} are exact
    // for the affine form.
    CHECK(k.alpha_bv == doctest::Approx(0.03).epsilon(1e-14));
    CHECK(k.l_alpha == doctest::Approx(0.02).epsilon(1e-14));
    CHECK(k.alpha_h_norm == doctest::Approx(0.05).epsilon(1e-14));
    CHECK(k.alpha_sup == doctest::Approx(0.03).epsilon(1e-12));
}

TEST_CASE("estimated constants reject bad inputs") {
    const std::int64_t m = 2049;
    const FractalProblem problem = two_interval_problem("weierstrass:2,0.5", cplx(0.2, 0.0), m);
    const auto [h, fp] = alpha_fractal(problem);

    CHECK_THROWS_AS(estimate_constants(problem, h, 0.0), invalid_input);
    CHECK_THROWS_AS(estimate_constants(problem, h, 1.0), invalid_input);
    CHECK_THROWS_WITH_AS(estimate_constants(problem, sample_text("weierstrass:2,0.5", 1025), 0.5),
                         doctest::Contains("problem grid"), invalid_input);
    CHECK_THROWS_WITH_AS(estimate_constants(problem, h, 0.5, 1.5),
                         doctest::Contains("delta0 outside the domain"), invalid_input);
    CHECK_THROWS_WITH_AS(estimate_constants(problem, h, 0.5, 0.0),
                         doctest::Contains("delta0 outside the domain"), invalid_input);

    const FractalProblem dense = two_interval_problem("weierstrass:2,0.5", cplx(0.2, 0.0), 8193);
    const auto [hd, fpd] = alpha_fractal(dense);
    CHECK_THROWS_WITH_AS(estimate_constants(dense, hd, 0.5, 1.0),
                         doctest::Contains("delta0 too wide"), invalid_input);
}

TEST_CASE("certifying window reacts to roughness") {
    const SampledFunction weier = sample_text("weierstrass:2,0.5", 4097);
    const double d = largest_certifying_delta0(weier, 0.5);
    CHECK(d > 0.0);
    CHECK(d <= 0.5);

    // A line has |df| = |dt|, so at sigma < 1 every window certifies.
    const SampledFunction line = sample_text("polynomial:0,1", 1025);
    CHECK(largest_certifying_delta0(line, 0.5) > 0.0);

    CHECK(largest_certifying_delta0(constant_fn(cplx(2.0, 0.0), 1025), 0.5) == 0.0);
    CHECK_THROWS_WITH_AS(largest_certifying_delta0(weier, 0.0),
                         doctest::Contains("exponent must lie in (0, 1]"), invalid_input);
}

TEST_CASE("holder check gates on the alpha norm") {
    TheoremConstants k = hand_constants();

    TheoremReport rep = check_holder_theorem(k);
    CHECK(rep.theorem_id == "holder-3.11");
    CHECK(rep.hypothesis_satisfied);
    CHECK(rep.verdict == Verdict::consistent);
    CHECK(rep.summary.find("no interpolant supplied") != std::string::npos);
    CHECK(field(rep.hypothesis_values, "c_sigma_threshold") ==
          doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    REQUIRE(rep.predicted.interval.has_value());
    CHECK(rep.predicted.interval->first == doctest::Approx(0.4));
    CHECK(rep.predicted.interval->second == 1.0);

    k.alpha_h_norm = 0.8;
    rep = check_holder_theorem(k);
    CHECK_FALSE(rep.hypothesis_satisfied);
    CHECK(rep.verdict == Verdict::hypothesis_not_met);
    CHECK(rep.summary.find("not in force") != std::string::npos);
}

TEST_CASE("holder check measures the interpolant exponent") {
    const std::int64_t m = 4097;
    const FractalProblem problem = two_interval_problem("weierstrass:2,0.5", cplx(0.2, 0.0), m);
    const auto [h, fp] = alpha_fractal(problem);

    const TheoremConstants k = estimate_constants(problem, h, 0.5);
    REQUIRE(k.alpha_h_norm < std::sqrt(0.5));

    const TheoremReport rep = check_holder_theorem(k, &h);
    CHECK(rep.hypothesis_satisfied);
    CHECK(rep.verdict == Verdict::consistent);
    const double observed = field(rep.observed, "holder_exponent");
    CHECK(observed >= 0.4);
    CHECK(observed <= 1.0);
    CHECK(rep.summary.find("observed exponent") != std::string::npos);
}

TEST_CASE("main dimension check gates on every hypothesis branch") {
    const TheoremConstants k0 = hand_constants();

    // den = 2(k_fba + l_b) = 2, num = l_f1 = 1, threshold = c^s * 1/2.
    TheoremReport rep = check_mainthm(k0);
    CHECK(rep.theorem_id == "mainthm-3.12");
    CHECK(field(rep.hypothesis_values, "numerator_1") == 1.0);
    CHECK(field(rep.hypothesis_values, "denominator") == 2.0);
    CHECK(field(rep.hypothesis_values, "threshold") ==
          doctest::Approx(std::sqrt(0.5) * 0.5).epsilon(1e-15));
    CHECK(rep.hypothesis_satisfied);
    CHECK(rep.verdict == Verdict::consistent);
    CHECK(rep.summary.find("no interpolant supplied") != std::string::npos);
    REQUIRE(rep.predicted.interval.has_value());
    CHECK(rep.predicted.interval->first == doctest::Approx(1.4));
    CHECK(rep.predicted.interval->second == doctest::Approx(1.6));

    // A large scaling seminorm wipes out the oscillation floor.
    TheoremConstants k1 = k0;
    k1.l_alpha = 0.5;
    rep = check_mainthm(k1);
    CHECK(field(rep.hypothesis_values, "numerator_1") < 0.0);
    CHECK_FALSE(rep.hypothesis_satisfied);
    CHECK(rep.verdict == Verdict::hypothesis_not_met);
    CHECK(rep.summary.find("oscillation floor") != std::string::npos);

    TheoremConstants k2 = k0;
    k2.alpha_h_norm = 0.4;
    rep = check_mainthm(k2);
    CHECK_FALSE(rep.hypothesis_satisfied);
    CHECK(rep.verdict == Verdict::hypothesis_not_met);
    CHECK(rep.summary.find(">= threshold") != std::string::npos);

    // Zero denominator keeps the plain c^sigma threshold.
    TheoremConstants k3 = k0;
    k3.k_fba = 0.0;
    k3.l_b = 0.0;
    rep = check_mainthm(k3);
    CHECK(field(rep.hypothesis_values, "threshold") ==
          doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK(rep.hypothesis_satisfied);
}

TEST_CASE("main dimension check measures component dimensions") {
    const TheoremConstants k = hand_constants();

    // Both components rough with dimension near 1.5.
    const SampledFunction rough =
        sample_text("weierstrass:2,0.5 + (0,1)*takagi:0.70710678118654752", 4097);
    TheoremReport rep = check_mainthm(k, &rough);
    CHECK(rep.verdict == Verdict::consistent);
    CHECK(field(rep.observed, "dim_real") == doctest::Approx(1.5).epsilon(0.07));
    CHECK(field(rep.observed, "dim_imag") == doctest::Approx(1.5).epsilon(0.07));
    CHECK(field(rep.observed, "fit_r2_real") > 0.99);

    // A smooth interpolant lands at dimension 1 and contradicts the claim.
    const SampledFunction smooth = sample_text("trig-sum:1,1,0", 4097);
    rep = check_mainthm(k, &smooth);
    CHECK(rep.hypothesis_satisfied);
    CHECK(rep.verdict == Verdict::inconsistent);
    CHECK(field(rep.observed, "dim_real") < 1.2);
}

TEST_CASE("bv check confirms dimension one on a tame instance") {
    const std::int64_t m = 8193;
    const FractalProblem problem = two_interval_problem("trig-sum:1,1,0", cplx(0.05, 0.0), m);
    const auto [h, fp] = alpha_fractal(problem);

    const TheoremReport rep = check_bv_theorem(problem, h);
    CHECK(rep.theorem_id == "bv");
    CHECK(field(rep.hypothesis_values, "alpha_bv_norm") == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(field(rep.hypothesis_values, "bound") == 0.25);
    CHECK(field(rep.hypothesis_values, "intervals") == 2.0);
    CHECK(rep.hypothesis_satisfied);
    CHECK(rep.verdict == Verdict::consistent);
    CHECK(field(rep.observed, "dim_real") == doctest::Approx(1.0).epsilon(0.1));
    CHECK(field(rep.observed, "dim_imag") == doctest::Approx(1.0).epsilon(0.1));
    CHECK(field(rep.observed, "dim_graph3d") == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("bv check refuses to judge a loud scaling") {
    const std::int64_t m = 2049;
    const FractalProblem problem = two_interval_problem("trig-sum:1,1,0", cplx(0.3, 0.0), m);
    const auto [h, fp] = alpha_fractal(problem);

    const TheoremReport rep = check_bv_theorem(problem, h);
    CHECK_FALSE(rep.hypothesis_satisfied);
    CHECK(rep.verdict == Verdict::hypothesis_not_met);
    CHECK(rep.summary.find(">= bound") != std::string::npos);
}

TEST_CASE("bounds check across its verdict branches") {
    // Equal per-map bounds collapse the Moran interval to a point.
    const ContractionBounds collapsed({0.5, 0.5}, {0.5, 0.5});
    const auto [lo, hi] = dimension_bounds(collapsed);
    CHECK(lo.exponent == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(hi.exponent == doctest::Approx(1.0).epsilon(1e-12));

    // 8193 samples: the cube-grid 3d estimate needs this much resolution to
    // settle below the 1.1 consistency margin on a near-smooth graph
    const FractalProblem problem = two_interval_problem("trig-sum:1,1,0", cplx(0.2, 0.0), 8193);
    const auto [h, fp] = alpha_fractal(problem);
    const GraphCloud graph = graph_cloud(h, GraphMode::complex_3d);

    TheoremReport rep = check_bounds_theorem(collapsed, graph);
    CHECK(rep.theorem_id == "bounds-3.6");
    CHECK(rep.hypothesis_satisfied);
    CHECK(rep.verdict == Verdict::consistent);
    CHECK(rep.summary.find("within upper root") != std::string::npos);
    CHECK(field(rep.hypothesis_values, "empirical_bounds") == 0.0);
    CHECK(field(rep.observed, "dim_graph3d") == doctest::Approx(1.0).epsilon(0.1));

    // Upper root far below 1: a connected graph sits at the unit floor and
    // the one-sided check must convict.
    const ContractionBounds tight({0.2, 0.2}, {0.25, 0.25});
    rep = check_bounds_theorem(tight, graph, true);
    CHECK(field(rep.hypothesis_values, "upper_root") == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(field(rep.hypothesis_values, "empirical_bounds") == 1.0);
    CHECK(rep.verdict == Verdict::inconsistent);
    CHECK(rep.summary.find("exceeds upper root") != std::string::npos);
}

TEST_CASE("bounds check flags estimates hugging the unit floor") {
    // Four gentle maps whose upper Moran root sits just below 1; the graph of
    // a mild interpolant overshoots it by a hair and lands in the flagged
    // consistent branch instead of a conviction.
    SampledFunction germ = sample_text("0.1*trig-sum:1,1,0", 8193);
    SampledFunction base = constant_fn(cplx(0.0, 0.0), 8193);
    std::vector<ScalingFunction> scalings(4, ScalingFunction::make_constant(cplx(0.3, 0.0)));
    const FractalProblem problem(Partition({0.0, 0.25, 0.5, 0.75, 1.0}), germ, base, scalings);
    const auto [h, fp] = alpha_fractal(problem);

    const ContractionBounds nearly({0.1, 0.1, 0.1, 0.1}, {0.2331, 0.2331, 0.2331, 0.2331});
    const auto [lo, hi] = dimension_bounds(nearly);
    REQUIRE(hi.exponent > 0.95);
    REQUIRE(hi.exponent < 1.0);

    const TheoremReport rep =
        check_bounds_theorem(nearly, graph_cloud(h, GraphMode::complex_3d), true);
    CHECK(rep.verdict == Verdict::consistent);
    CHECK(rep.summary.find("at the unit floor") != std::string::npos);
    CHECK(field(rep.observed, "dim_graph3d") > hi.exponent + 0.1);
    CHECK(field(rep.observed, "dim_graph3d") <= 1.1);
}

TEST_CASE("empirical contraction bounds are deterministic and sane") {
    SampledFunction germ = sample_text("0.1*trig-sum:1,1,0", 2049);
    SampledFunction base = constant_fn(cplx(0.0, 0.0), 2049);
    std::vector<ScalingFunction> scalings(4, ScalingFunction::make_constant(cplx(0.3, 0.0)));
    const FractalProblem problem(Partition({0.0, 0.25, 0.5, 0.75, 1.0}), germ, base, scalings);
    const auto [h, fp] = alpha_fractal(problem);
    const IFSSystem ifs = build_ifs(problem);

    const ContractionBounds b1 = estimate_contraction_bounds(ifs, h, 2000, 7);
    const ContractionBounds b2 = estimate_contraction_bounds(ifs, h, 2000, 7);
    CHECK(b1.lower == b2.lower);
    CHECK(b1.upper == b2.upper);

    REQUIRE(b1.lower.size() == 4);
    REQUIRE(b1.upper.size() == 4);
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(b1.lower[k] > 0.0);
        CHECK(b1.lower[k] <= b1.upper[k]);
        CHECK(b1.upper[k] < 1.0);
    }

    const ContractionBounds b3 = estimate_contraction_bounds(ifs, h, 2000, 8);
    CHECK(b1.upper != b3.upper);

    const auto [lo, hi] = dimension_bounds(b1);
    CHECK(lo.exponent <= hi.exponent);
    CHECK(lo.exponent > 0.0);

    CHECK_THROWS_WITH_AS(estimate_contraction_bounds(ifs, h, 9, 7),
                         doctest::Contains("at least 10"), invalid_input);
}

TEST_CASE("empirical contraction bounds reject a rough attractor") {
    // A Weierstrass germ breaks the D-metric contraction at small |dt|.
    const FractalProblem problem = two_interval_problem("weierstrass:2,0.5", cplx(0.2, 0.1), 1025);
    const auto [h, fp] = alpha_fractal(problem);
    const IFSSystem ifs = build_ifs(problem);
    CHECK_THROWS_WITH_AS(estimate_contraction_bounds(ifs, h, 2000, 7),
                         doctest::Contains("no-contraction"), numeric_error);
}

TEST_CASE("graph views collapse for a lipschitz partner") {
    const SampledFunction g = sample_text("weierstrass:2,0.5", 4097);
    const SampledFunction h = sample_text("trig-sum:1,1,0", 4097);

    const TheoremReport rep = compare_graph_dimensions(g, h, "lemma-3.5");
    CHECK(rep.theorem_id == "lemma-3.5");
    CHECK(field(rep.hypothesis_values, "lipschitz_h") < 10.0);
    CHECK(field(rep.hypothesis_values, "collapse_applies") == 1.0);
    CHECK(field(rep.observed, "counts_equal") == 1.0);
    CHECK(rep.verdict == Verdict::consistent);

    // Identical per-scale counts force identical fitted slopes.
    CHECK(field(rep.observed, "dim_pair3d") == field(rep.observed, "dim_complex3d"));

    const double d_g = field(rep.observed, "dim_g");
    CHECK(d_g == doctest::Approx(1.5).epsilon(0.1));
    CHECK(field(rep.observed, "dim_complex3d") >= d_g - 0.1);
    CHECK(std::abs(field(rep.observed, "dim_sum") - d_g) <= 0.1);
}

TEST_CASE("graph views keep the max inequality without the collapse") {
    const SampledFunction g = sample_text("weierstrass:2,0.5", 4097);
    const SampledFunction h = sample_text("3*takagi:0.5", 4097);

    const TheoremReport rep = compare_graph_dimensions(g, h, "prop-3.2");
    CHECK(rep.theorem_id == "prop-3.2");
    CHECK(field(rep.hypothesis_values, "lipschitz_h") > 10.0);
    CHECK(field(rep.hypothesis_values, "collapse_applies") == 0.0);
    CHECK(field(rep.observed, "counts_equal") == 1.0);
    CHECK(rep.verdict == Verdict::consistent);

    const double d_max =
        std::max(field(rep.observed, "dim_g"), field(rep.observed, "dim_h"));
    CHECK(field(rep.observed, "dim_complex3d") >= d_max - 0.1);
}

TEST_CASE("graph view comparison rejects mismatched inputs") {
    const SampledFunction g = sample_text("weierstrass:2,0.5", 1025);
    const SampledFunction h = sample_text("trig-sum:1,1,0", 1025);
    const SampledFunction complex_g = sample_text("(0,1)*takagi:0.5", 1025);
    const SampledFunction short_h = sample_text("trig-sum:1,1,0", 513);

    CHECK_THROWS_WITH_AS(compare_graph_dimensions(complex_g, h, "lemma-3.1"),
                         doctest::Contains("must be real-valued"), invalid_input);
    CHECK_THROWS_WITH_AS(compare_graph_dimensions(g, short_h, "lemma-3.1"),
                         doctest::Contains("share a grid"), invalid_input);
}

TEST_CASE("peano remark at the entry depth") {
    const TheoremReport rep = peano_remark_experiment(6);
    CHECK(rep.theorem_id == "peano-remark");
    CHECK(field(rep.hypothesis_values, "depth") == 6.0);
    CHECK(field(rep.hypothesis_values, "floor_3d") == 0.0);
    CHECK(rep.verdict == Verdict::consistent);

    CHECK(field(rep.observed, "dim_x") == doctest::Approx(1.5).epsilon(0.12));
    CHECK(field(rep.observed, "dim_y") == doctest::Approx(1.5).epsilon(0.12));
    CHECK(field(rep.observed, "dim_graph3d") >=
          field(rep.observed, "dim_graph3d_prev") - 0.02);
    CHECK(field(rep.observed, "dim_graph3d") > 1.5);

    CHECK_THROWS_WITH_AS(peano_remark_experiment(5), doctest::Contains("[6, 10]"), invalid_input);
    CHECK_THROWS_WITH_AS(peano_remark_experiment(11), doctest::Contains("[6, 10]"), invalid_input);
}

TEST_CASE("failed hypotheses never produce a conviction") {
    for (double sigma : {0.3, 0.5, 0.7}) {
        for (double norm : {0.9, 1.2}) {
            TheoremConstants k = hand_constants();
            k.sigma = sigma;
            k.alpha_h_norm = norm;
            const TheoremReport h_rep = check_holder_theorem(k);
            CHECK_FALSE(h_rep.hypothesis_satisfied);
            CHECK(h_rep.verdict == Verdict::hypothesis_not_met);

            const TheoremReport m_rep = check_mainthm(k);
            CHECK_FALSE(m_rep.hypothesis_satisfied);
            CHECK(m_rep.verdict == Verdict::hypothesis_not_met);
        }
    }
}

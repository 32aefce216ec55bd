#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "flab/boxcount.hpp"
#include "flab/fif.hpp"
#include "flab/moran.hpp"
#include "flab/types.hpp"

namespace flab {

/// Constants feeding the hypothesis checkers. Seminorm-style fields are
/// discrete grid estimates; l_f1/l_f2 are lower-oscillation constants of the
/// germ components (largest lambda such that every grid point has, within
/// every dyadic window below delta_0, a partner with |df| >= lambda*|dt|^sigma).
struct TheoremConstants {
    double l_f = 0.0;      // Hölder seminorm of the germ
    double l_b = 0.0;      // Hölder seminorm of the base
    double l_alpha = 0.0;  // max_k Hölder seminorm of alpha_k
    double l_f1 = 0.0;     // lower oscillation of Re germ
    double l_f2 = 0.0;     // lower oscillation of Im germ
    double delta_0 = 0.0;  // window bound used for the lower-oscillation scan
    double k_fba = 0.0;    // Hölder seminorm of the interpolant f^alpha
    double m_bound = 0.0;  // sup-norm of the interpolant
    double b_sup = 0.0;    // sup-norm of the base
    double c = 0.0;        // min_k a_k
    double sigma = 0.0;
    double alpha_h_norm = 0.0; // max_k (sup + Hölder seminorm) of alpha_k
    double alpha_sup = 0.0;    // max_k sup of alpha_k
    double alpha_bv = 0.0;     // max_k (|alpha_k(x_1)| + total variation)
};

enum class Verdict { consistent, inconsistent, hypothesis_not_met };

const char* verdict_name(Verdict v);

/// Predicted value set: a real interval, or an equality claim over the
/// observed quantities.
struct Predicted {
    std::optional<std::pair<double, double>> interval;
    bool equality = false;
};

struct TheoremReport {
    std::string theorem_id;
    std::vector<std::pair<std::string, double>> hypothesis_values;
    bool hypothesis_satisfied = false;
    Predicted predicted;
    std::vector<std::pair<std::string, double>> observed;
    Verdict verdict = Verdict::hypothesis_not_met;
    std::string summary;
};

/// Tolerances pinned for the whole harness: dimension comparisons 0.1,
/// property-suite agreement at M >= 2^16 grids 0.05.
inline constexpr double kDimensionTol = 0.1;
inline constexpr double kAgreementTol = 0.05;

TheoremConstants estimate_constants(const FractalProblem& problem, const SampledFunction& f_alpha,
                                    double sigma, std::optional<double> delta0 = std::nullopt);

/// Largest dyadic window delta_0 for which the lower-oscillation scan of f
/// certifies a positive constant (0 when none does).
double largest_certifying_delta0(const SampledFunction& f, double sigma);

/// id "holder-3.11": interpolant inherits sigma-Hölder regularity when
/// alpha_h_norm < c^sigma. With f_alpha supplied the report carries the
/// observed exponent and checks sigma_hat >= sigma - 0.1.
TheoremReport check_holder_theorem(const TheoremConstants& constants,
                                   const SampledFunction* f_alpha = nullptr);

/// id "mainthm-3.12": both graph components have box dimension 2 - sigma when
/// alpha_h_norm < c^sigma * min{1, (l_f1 - 2(b_sup + m_bound) l_alpha c^-sigma)
/// / (2(k_fba + l_b)), same with l_f2}; a nonpositive numerator fails the
/// hypothesis. With f_alpha supplied the component dimensions are estimated
/// and compared against [2 - sigma - 0.1, 2 - sigma + 0.1].
TheoremReport check_mainthm(const TheoremConstants& constants,
                            const SampledFunction* f_alpha = nullptr);

/// id "bv": alpha_bv < 1/(2(N-1)) forces dimension 1 for both components and
/// the 3D graph.
TheoremReport check_bv_theorem(const FractalProblem& problem, const SampledFunction& f_alpha);

/// id "bounds-3.6": Moran bounds [r, R] from per-map contraction bounds; the
/// check is one-sided (box estimate <= R + tol; estimates near the R = 1
/// boundary of continuous graphs are flagged, not failed).
TheoremReport check_bounds_theorem(const ContractionBounds& bounds, const GraphCloud& graph3d,
                                   bool empirical_bounds = false);

/// Empirical D-metric contraction bounds (D = |dt| + |dz|) sampled over
/// random pairs of graph points; heuristic, flagged as such in reports.
ContractionBounds estimate_contraction_bounds(const IFSSystem& ifs, const SampledFunction& f_alpha,
                                              std::int64_t n_pairs, std::uint64_t seed);

/// ids "lemma-3.1", "prop-3.2", "prop-3.3", "lemma-3.4", "lemma-3.5":
/// cross-checks between the five graph views of a pair (g, h): 2D estimates
/// of G(g), G(h), G(g+h) and 3D estimates of G(g+ih), G((g,h)).
///   - the two 3D clouds must produce identical per-scale counts (integers);
///   - max-inequality: 3D estimates >= max(2D of g, 2D of h) - tol;
///   - when lipschitz_estimate(h) <= 10, the 3D estimates and the 2D
///     estimates of g and of g+h must agree within tol (Lipschitz collapse).
TheoremReport compare_graph_dimensions(const SampledFunction& g, const SampledFunction& h,
                                       const std::string& theorem_id, double tol = kDimensionTol);

/// id "peano-remark": Hilbert coordinate functions at the given depth (>= 6);
/// component graphs near dimension 1.5, 3D graph estimate >= 1.85 at depth 8
/// and nondecreasing in depth.
TheoremReport peano_remark_experiment(int depth);

} // namespace flab

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "flab/types.hpp"

namespace flab {

enum class GeneratorKind {
    polynomial,              // parameters: coefficients c0, c1, ... (real), sum c_j t^j
    trig_sum,                // parameters: triples (a, nu, phi), sum a*sin(2*pi*nu*t + phi)
    weierstrass,             // parameters: lambda (integer >= 2), sigma in (0,1), optional phase
    takagi,                  // parameters: w in (0,1), optional phase
    hilbert_coordinate_1,    // parameters: depth d >= 1
    hilbert_coordinate_2,    // parameters: depth d >= 1
    constant,                // parameters: re [, im]
    linear_through_endpoints // parameters: re0, im0, re1, im1
};

struct GeneratorSpec {
    GeneratorKind kind;
    std::vector<double> parameters;
};

/// One term of a weighted sum of generators; problem files use this to
/// assemble complex-valued germs and bases from the real catalog.
struct GeneratorTerm {
    GeneratorSpec spec;
    cplx weight{1.0, 0.0};
};

const char* kind_name(GeneratorKind kind);
GeneratorKind kind_from_name(std::string_view name);

/// Compact text form "kind:p1,p2,...".
GeneratorSpec parse_spec_text(std::string_view text);
std::string spec_text(const GeneratorSpec& spec);

/// Weighted-sum text form used by CLI flags and problem files, e.g.
/// "weierstrass:2,0.5 + (0,1)*takagi:0.5" or "0.1*trig-sum:1,2,0".
std::vector<GeneratorTerm> parse_terms_text(std::string_view text);
std::string terms_text(const std::vector<GeneratorTerm>& terms);

/// Validates parameter shape/ranges; throws invalid_input.
void validate_spec(const GeneratorSpec& spec);

/// Pointwise evaluation. Series kinds (weierstrass, takagi) are truncated so
/// the dropped tail is below 1e-12 of the full coefficient sum; Hilbert
/// coordinates are the depth-d polyline through cell centers, exact dyadic
/// values at t = k/4^d.
cplx eval_generator(const GeneratorSpec& spec, double t);

/// Samples onto a uniform grid of m points over [x0, x1].
SampledFunction sample(const GeneratorSpec& spec, double x0, double x1, std::int64_t m);

SampledFunction sample_terms(const std::vector<GeneratorTerm>& terms, double x0, double x1,
                             std::int64_t m);

/// Hilbert curve cell center for index k at depth d (both coordinates in [0,1]).
std::array<double, 2> hilbert_cell_center(int depth, std::uint64_t k);

} // namespace flab

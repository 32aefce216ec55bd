#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flab/fif.hpp"
#include "flab/generators.hpp"

namespace flab {

/// Scaling entry as written in a problem file.
struct ScalingEntry {
    ScalingFunction::Form form = ScalingFunction::Form::constant;
    cplx constant{0.0, 0.0};          // form == constant
    cplx slope{0.0, 0.0};             // form == affine_in_t
    cplx intercept{0.0, 0.0};         //
    std::vector<GeneratorTerm> terms; // form == sampled (sampled on the working grid)
};

/// Versioned on-disk problem description. Parsing rejects unknown fields and
/// reports the offending field (or line/column for syntax errors);
/// serialize -> parse round-trips losslessly.
struct ProblemFile {
    int version = 1;
    std::vector<double> knots;
    std::vector<GeneratorTerm> germ;
    std::vector<GeneratorTerm> base;
    std::vector<ScalingEntry> scalings;
    std::optional<std::vector<cplx>> values;
    int grid_exponent = 8; // working grid M = 2*(N-1)^L + 1
    std::uint64_t seed = 0;
};

ProblemFile parse_problem_json(const std::string& text);
ProblemFile load_problem_file(const std::string& path);
std::string problem_to_json(const ProblemFile& file);

std::int64_t working_grid_size(const ProblemFile& file);

/// Samples germ/base/scalings on the working grid and validates the result.
/// A linear-through-endpoints term with no parameters resolves to the germ's
/// endpoint values.
FractalProblem realize_problem(const ProblemFile& file);

} // namespace flab

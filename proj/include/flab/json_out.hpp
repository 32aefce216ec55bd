#pragma once

#include <string>

#include "flab/boxcount.hpp"
#include "flab/fif.hpp"
#include "flab/moran.hpp"
#include "flab/theorems.hpp"

namespace flab {

// Deterministic JSON serialization (fixed key order) for the CLI's report
// files and stdout payloads.

std::string fixed_point_report_json(const FixedPointReport& report, double tolerance);
std::string dimension_estimate_json(const DimensionEstimate& estimate);
std::string moran_root_json(const MoranRoot& root);
std::string moran_bounds_json(const MoranRoot& r, const MoranRoot& R);
std::string theorem_report_json(const TheoremReport& report);

} // namespace flab

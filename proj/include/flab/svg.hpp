#pragma once

#include <string>

#include "flab/boxcount.hpp"
#include "flab/types.hpp"

namespace flab {

// Deterministic SVG rendering: fixed canvas, fixed formatting, no timestamps;
// identical input yields identical bytes.

/// Sample plot: one <polyline> for the real part plus one for the imaginary
/// part when it is not identically zero. Axes are drawn as <path> elements.
std::string render_samples_svg(const SampledFunction& f);

/// log-log series plot: one <circle> per scale and exactly one <line> element
/// (the least-squares fit). Throws invalid_input for an empty series.
std::string render_series_svg(const BoxCountSeries& series);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

} // namespace flab

#pragma once

#include <string>

#include "flab/boxcount.hpp"
#include "flab/types.hpp"

namespace flab {

// All CSV output uses '.' as the decimal separator and 17 significant digits.

/// Columns t,re,im.
void write_samples_csv(const std::string& path, const SampledFunction& f);
SampledFunction read_samples_csv(const std::string& path);

/// Columns delta,count,log_delta,log_count (natural logs).
void write_series_csv(const std::string& path, const BoxCountSeries& series);
BoxCountSeries read_series_csv(const std::string& path);

std::string format_double(double v); // %.17g

} // namespace flab

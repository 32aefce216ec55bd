#pragma once

#include "flab/types.hpp"

namespace flab {

/// Exact Hausdorff distance between two finite nonempty clouds of equal
/// dimension (Euclidean metric): max of the two directed sup-inf distances.
/// Bucket-grid accelerated; results identical to the brute-force scan.
double hausdorff_distance(const GraphCloud& a, const GraphCloud& b);

} // namespace flab

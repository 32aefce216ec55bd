#pragma once

#include <cstdint>
#include <functional>

namespace flab {

// Worker count honoring the FRACTAL_LAB_THREADS environment variable
// (unset or 0 = hardware concurrency). Always >= 1.
int thread_count();

// Splits [0, n) into contiguous chunks, one worker thread per chunk.
// fn(begin, end) must only touch state owned by its own range (or reduce
// with order-independent operations such as min/max); under that contract
// results are bit-identical for any worker count.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t, std::int64_t)>& fn);

} // namespace flab

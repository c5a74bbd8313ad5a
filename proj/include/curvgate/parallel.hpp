// Index-parallel loops with a thread cap from CURVGATE_THREADS.
#pragma once

#include <cstddef>
#include <functional>

namespace curvgate {

/// Worker count: CURVGATE_THREADS if set to a positive integer, otherwise
/// std::thread::hardware_concurrency(). Read on every call.
int thread_count();

/// Calls fn(i) for i in [0, count). Each index is handled exactly once;
/// callers write results into per-index slots and fold them afterwards, so
/// output does not depend on scheduling. The first exception thrown by any
/// call is rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace curvgate

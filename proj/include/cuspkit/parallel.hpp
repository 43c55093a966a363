#pragma once

#include <cstddef>
#include <functional>

namespace cuspkit {

/// Threads available to parallel loops: CUSPKIT_THREADS if set to a positive
/// integer, else the hardware concurrency (at least 1).
int worker_count();

/// Calls body(i) for i in [0, count) on up to `threads` threads (0: worker_count()).
/// Each index runs exactly once; the first exception thrown is rethrown.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

}  // namespace cuspkit

#pragma once

#include <cstddef>
#include <functional>

namespace liouville {

// Worker cap: LIOUVILLE_DISK_THREADS when set and positive, otherwise the
// hardware concurrency (at least 1).
std::size_t max_threads();

// Runs body(i) for i in [0, count). Each index is handled exactly once; callers
// write results into pre-sized slots so assembly order never depends on
// completion order. The first exception thrown by any body is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace liouville

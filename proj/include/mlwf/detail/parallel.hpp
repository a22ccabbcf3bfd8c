#pragma once

#include <cstddef>
#include <functional>

namespace mlwf::detail {

// Worker count from MLWF_WORKERS, else the hardware concurrency.
unsigned worker_count();

// Runs fn(0..n-1) on worker threads. Each call must write only to its own slot
// so results do not depend on scheduling. The first exception is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace mlwf::detail

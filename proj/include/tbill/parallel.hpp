#pragma once

#include <cstddef>
#include <functional>

namespace tbill {

/// Worker count from TILING_BILLIARDS_THREADS; unset, 0 or unparsable means all cores.
int thread_count();

/// Runs body(i) for i in [0, n) on up to `threads` workers (0: thread_count()). The
/// first exception thrown by any task is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, int threads = 0);

}  // namespace tbill

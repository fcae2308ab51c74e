#pragma once

#include <cstddef>
#include <functional>

namespace schroeder_tails {

/// Worker count: hardware concurrency capped by the SCHROEDER_TAILS_THREADS
/// environment variable. `requested` = 0 means "use the cap"; any request is
/// still capped.
int max_threads(int requested = 0);

/// Runs fn over disjoint index chunks [lo, hi). Results must be written to
/// caller-owned slots indexed by the loop variable so the outcome does not
/// depend on scheduling. Runs inline when threads <= 1 or n is small.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace schroeder_tails

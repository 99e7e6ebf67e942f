#pragma once

#include <cstddef>
#include <functional>

namespace aisel {

/// Runs fn(i) for i in [0, n) on up to `workers` threads with a static
/// block partition. workers <= 1 runs inline. Results must not depend on
/// the partition; callers derive per-index RNG streams for that.
void parallel_for(std::size_t n, unsigned workers,
                  const std::function<void(std::size_t)>& fn);

/// Hardware concurrency with a floor of 1.
unsigned default_workers();

}  // namespace aisel

#include "aisel/parallel.hpp"

#include <thread>
#include <vector>

namespace aisel {

unsigned default_workers() {
  unsigned n = std::thread::hardware_concurrency();
  return n > 0 ? n : 1;
}

void parallel_for(std::size_t n, unsigned workers,
                  const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  if (workers <= 1 || n == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const unsigned k = static_cast<unsigned>(
      std::min<std::size_t>(workers, n));
  std::vector<std::thread> threads;
  threads.reserve(k);
  const std::size_t chunk = (n + k - 1) / k;
  for (unsigned w = 0; w < k; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    threads.emplace_back([lo, hi, &fn]() {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : threads) t.join();
}

}  // namespace aisel

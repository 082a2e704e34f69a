#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace sepcut {

// Runs work(r) for every r in [0, count) over contiguous thread blocks.
// Callers key their RNG on r, so the partition never affects results.
// threads = 0 picks hardware concurrency.
inline void for_replicas(std::int64_t count, int threads,
                         const std::function<void(std::int64_t)>& work) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  std::int64_t nthreads = threads > 0 ? threads : static_cast<std::int64_t>(hw);
  nthreads = std::min<std::int64_t>(nthreads, count);
  if (nthreads <= 1) {
    for (std::int64_t r = 0; r < count; ++r) work(r);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(nthreads));
  const std::int64_t chunk = (count + nthreads - 1) / nthreads;
  for (std::int64_t k = 0; k < nthreads; ++k) {
    const std::int64_t lo = k * chunk;
    const std::int64_t hi = std::min(count, lo + chunk);
    pool.emplace_back([lo, hi, &work] {
      for (std::int64_t r = lo; r < hi; ++r) work(r);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace sepcut

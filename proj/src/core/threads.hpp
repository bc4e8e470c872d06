#pragma once

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace crossn {

// Worker count: CROSSN_THREADS if set, otherwise the hardware concurrency.
inline int thread_count() {
  if (const char* env = std::getenv("CROSSN_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return std::min(v, 64);
  }
  unsigned hc = std::thread::hardware_concurrency();
  return std::clamp(static_cast<int>(hc == 0 ? 1 : hc), 1, 64);
}

// Static block split; fn(i) must write only to slot i, and each slot is
// accumulated in a fixed order by a single worker, so results do not depend
// on the schedule.
template <class Fn>
void parallel_for(std::size_t begin, std::size_t end, Fn&& fn) {
  const std::size_t total = end - begin;
  const int workers = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(thread_count()), std::max<std::size_t>(total, 1)));
  if (workers <= 1 || total < 2) {
    for (std::size_t i = begin; i < end; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    const std::size_t lo = begin + total * w / workers;
    const std::size_t hi = begin + total * (w + 1) / workers;
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace crossn

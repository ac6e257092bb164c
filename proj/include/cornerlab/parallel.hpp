#pragma once

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace cornerlab {

// Worker cap from CORNERLAB_THREADS (0 or unset = hardware concurrency).
inline int thread_count() {
  if (const char* env = std::getenv("CORNERLAB_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(i) for every i in [0, count). Work items are claimed dynamically,
// so fn must only touch state owned by item i (or be pure); any cross-item
// reduction belongs to the caller, applied in index order after the return.
template <typename Fn>
void parallel_for_index(std::size_t count, Fn&& fn) {
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(thread_count()), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> cursor{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&cursor, count, &fn] {
      for (;;) {
        const std::size_t i = cursor.fetch_add(1, std::memory_order_relaxed);
        if (i >= count) return;
        fn(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace cornerlab

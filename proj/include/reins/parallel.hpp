#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace reins {

/// Runs body(i) for i in [0, n) on a small thread pool. Work items are handed
/// out by index, so results written to slot i do not depend on scheduling.
/// The first exception thrown by any worker is rethrown on the caller.
template <class Body>
void parallel_for(std::size_t n, Body&& body, unsigned max_workers = 0) {
  unsigned workers = max_workers ? max_workers : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace reins

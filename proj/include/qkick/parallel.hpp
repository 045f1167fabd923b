// parallel.hpp — deterministic index-space fan-out for parameter sweeps.

#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace qkick {

// Worker count from the QKICK_WORKERS environment variable, falling back to
// the hardware concurrency.
unsigned default_worker_count();

// Runs fn(0..n-1) across up to n_workers threads. Callers write results into
// preallocated slots keyed by index, so output order never depends on
// scheduling. The first exception thrown by any task is rethrown here.
inline void parallel_for(std::size_t n, unsigned n_workers, const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  if (n_workers <= 1 || n == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> threads;
  const unsigned count = static_cast<unsigned>(std::min<std::size_t>(n, n_workers));
  threads.reserve(count);
  for (unsigned t = 0; t < count; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace qkick

#pragma once

// Index-range work distribution for corpus checks and enumeration suites.
// The worker count is bounded by EPSILON_KERNEL_THREADS (default: hardware
// concurrency); callers keep reports canonical by writing into per-index
// slots and emitting in index order afterwards.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace epsilon {

inline int parallel_width() {
  if (const char* env = std::getenv("EPSILON_KERNEL_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

// Runs fn(0..n-1); rethrows the first worker exception after joining.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  std::size_t width = std::min<std::size_t>(n, static_cast<std::size_t>(parallel_width()));
  if (width <= 1) {
    for (std::size_t i = 0; i < n; i++) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  pool.reserve(width);
  for (std::size_t w = 0; w < width; w++)
    pool.emplace_back([&] {
      while (true) {
        std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace epsilon

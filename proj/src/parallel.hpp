#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace rmtnet::detail {

/// Runs fn(i) for i in [0, n) on up to `workers` threads. Indices are handed
/// out dynamically; the first exception (lowest index) is rethrown after all
/// threads join.
template <class Fn>
void parallel_for(std::size_t n, unsigned workers, Fn &&fn) {
  const auto threads =
      static_cast<std::size_t>(std::max(1u, workers)) < n
          ? static_cast<std::size_t>(std::max(1u, workers))
          : n;
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i)
      fn(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  std::size_t error_index = n;
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (i < error_index) {
              error_index = i;
              error = std::current_exception();
            }
          }
        }
      });
  }
  if (error)
    std::rethrow_exception(error);
}

} // namespace rmtnet::detail

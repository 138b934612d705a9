#pragma once

// Deterministic data-parallel helpers. Workers claim indices dynamically but
// each task writes only its own output slot, and callers fold the results in
// index order, so output never depends on the worker count.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace lroot {

/// Environment variable overriding the default worker count.
inline constexpr const char* kWorkersEnv = "LROOT_WORKERS";

/// Worker count: LROOT_WORKERS when set and positive, else hardware threads.
inline unsigned default_workers() {
  if (const char* env = std::getenv(kWorkersEnv)) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Evaluates fn(i) for i in [0, count) on up to `workers` threads and returns
/// the results in index order. The first exception thrown by any task is
/// rethrown on the calling thread.
template <typename Fn>
auto parallel_map(std::size_t count, unsigned workers, Fn&& fn) {
  using T = decltype(fn(std::size_t{0}));
  std::vector<T> out(count);
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            out[i] = fn(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            next = count;
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace lroot

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace qwalk::experiments {

/// QWALK_WORKERS if set to a positive integer, else the hardware concurrency.
inline unsigned worker_count() {
  if (const char* env = std::getenv("QWALK_WORKERS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Evaluates job(i) for i in [0, count) on a small pool. Results land in
/// slot i, so the output order never depends on scheduling. The first
/// exception is rethrown after all workers join.
template <class Result>
std::vector<Result> parallel_map(std::size_t count, const std::function<Result(std::size_t)>& job,
                                 unsigned workers = worker_count()) {
  std::vector<Result> results(count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto drain = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        results[i] = job(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  if (threads <= 1) {
    drain();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(drain);
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

}  // namespace qwalk::experiments

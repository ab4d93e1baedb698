#pragma once

#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace wbkin {

/// Runs fn(i) for i in [0, n) across hardware threads with a static block
/// split. The first exception thrown by any worker is rethrown on the caller
/// after all workers join. fn must not depend on evaluation order.
template <typename Fn>
void parallel_for(int n, Fn&& fn) {
  if (n <= 0) return;
  int workers = static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  if (workers > n) workers = n;
  if (workers == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }

  std::exception_ptr error;
  std::atomic_flag error_set = ATOMIC_FLAG_INIT;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    const int begin = static_cast<int>(static_cast<long long>(n) * w / workers);
    const int end =
        static_cast<int>(static_cast<long long>(n) * (w + 1) / workers);
    pool.emplace_back([&, begin, end] {
      try {
        for (int i = begin; i < end; ++i) fn(i);
      } catch (...) {
        if (!error_set.test_and_set()) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace wbkin

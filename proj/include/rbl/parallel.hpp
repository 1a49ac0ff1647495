#pragma once

#include <cstddef>
#include <cstdlib>
#include <thread>
#include <vector>

namespace rbl::par {

// Global worker count: RBL_THREADS env > set_threads() > hardware default.
// Results never depend on it: work items are pure functions of their index
// and reductions happen serially afterwards.
inline int& thread_setting() {
  static int value = 0;  // 0 = auto
  return value;
}

inline void set_threads(int t) { thread_setting() = t; }

inline int thread_count() {
  if (const char* env = std::getenv("RBL_THREADS")) {
    int t = std::atoi(env);
    if (t >= 1) return t;
  }
  if (thread_setting() >= 1) return thread_setting();
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Static chunking: worker w handles indices [w*chunk, ...); deterministic
// partition, join-all semantics. Exceptions in workers propagate (first one).
template <class F>
void parallel_for(std::size_t n, F&& body) {
  int workers = thread_count();
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::size_t chunk = (n + workers - 1) / static_cast<std::size_t>(workers);
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    std::size_t lo = static_cast<std::size_t>(w) * chunk;
    std::size_t hi = lo + chunk < n ? lo + chunk : n;
    if (lo >= hi) break;
    pool.emplace_back([&errors, &body, w, lo, hi]() {
      try {
        for (std::size_t i = lo; i < hi; ++i) body(i);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace rbl::par

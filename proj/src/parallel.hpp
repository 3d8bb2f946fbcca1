#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace molien {

unsigned resolve_threads(unsigned requested);

// Runs work(i) for i in [0, n) on up to `threads` threads.  Any exception is
// rethrown for the smallest failing index, so failures are deterministic too.
template <class F>
inline void parallel_for(std::size_t n, unsigned threads, F work) {
  threads = static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), n));
  std::vector<std::exception_ptr> errors(n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      try {
        work(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            work(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace molien

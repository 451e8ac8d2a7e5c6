#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace flatstrata {

// Runs fn(i) for i in [0, n) on up to `threads` threads, contiguous blocks
// per thread. The first exception thrown by any worker is rethrown.
template <class Fn> void parallel_for(std::size_t n, int threads, Fn &&fn) {
  const std::size_t t = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), 1,
                                                std::max<std::size_t>(n, 1));
  if (t == 1) {
    for (std::size_t i = 0; i < n; ++i)
      fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(t);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < t; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w * n / t; i < (w + 1) * n / t; ++i)
          fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto &th : pool)
    th.join();
  for (auto &e : errors)
    if (e)
      std::rethrow_exception(e);
}

} // namespace flatstrata

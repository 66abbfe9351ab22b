#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace fcs {

// Runs body(i) for i in [0, count) on up to `threads` threads.
inline void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
  if (threads <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < count; i += threads) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace fcs

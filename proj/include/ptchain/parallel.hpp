#pragma once

#include <cstdlib>
#include <thread>
#include <vector>

namespace ptchain {

/// Worker cap: PTCHAIN_THREADS when set (minimum 1), otherwise the
/// hardware concurrency.
inline unsigned worker_cap() {
  if (const char* env = std::getenv("PTCHAIN_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
    return 1;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Runs fn(i) for i in [0, count) across up to worker_cap() threads.
/// fn must only touch state owned by index i.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  const unsigned threads = std::min<std::size_t>(worker_cap(), count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([t, threads, count, &fn]() {
      for (std::size_t i = t; i < count; i += threads) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace ptchain

#pragma once
#ifndef CUBICLAB_PARALLEL_HPP
#define CUBICLAB_PARALLEL_HPP

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace cubiclab {

/// Worker count: explicit value if positive, else CUBIC_AUX_THREADS, else the
/// hardware concurrency.
inline int resolve_threads(int requested = 0) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("CUBIC_AUX_THREADS")) {
    try {
      int v = std::stoi(env);
      if (v > 0) return v;
    } catch (...) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs body(chunk) for chunk in [0, chunks) on up to `threads` workers.
/// Work is split into a fixed number of chunks independent of the worker
/// count, and callers reduce per-chunk results in chunk order, so results do
/// not depend on scheduling.
inline void parallel_chunks(std::size_t chunks, int threads, const std::function<void(std::size_t)>& body) {
  threads = std::max(1, std::min<int>(threads, int(chunks)));
  if (threads <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) body(c);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (int w = 0; w < threads; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t c = std::size_t(w); c < chunks; c += std::size_t(threads)) body(c);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

/// Sums body(i) over i in [0, count) with deterministic chunking.
template <class T, class F>
T parallel_sum(std::size_t count, int threads, F&& body, std::size_t chunks = 64) {
  chunks = std::max<std::size_t>(1, std::min(chunks, count));
  std::vector<T> part(chunks, T{});
  parallel_chunks(chunks, threads, [&](std::size_t c) {
    const std::size_t lo = count * c / chunks, hi = count * (c + 1) / chunks;
    T acc{};
    for (std::size_t i = lo; i < hi; ++i) acc += body(i);
    part[c] = acc;
  });
  T total{};
  for (auto& p : part) total += p;
  return total;
}

}  // namespace cubiclab

#endif  // CUBICLAB_PARALLEL_HPP

#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace cvw {

/// 0 means "one per hardware thread"; the result is always at least 1.
inline std::size_t resolve_threads(std::size_t requested) {
  if (requested == 0) {
    requested = std::max(1U, std::thread::hardware_concurrency());
  }
  return requested;
}

/// Splits [0, count) into at most `threads` contiguous chunks and calls
/// fn(worker, begin, end) for each, one std::thread per chunk. Chunk bounds
/// depend only on (count, threads). The first exception thrown by any worker
/// is rethrown after all workers have joined.
template <class Fn>
void parallel_chunks(std::size_t count, std::size_t threads, Fn&& fn) {
  threads = std::min(resolve_threads(threads), std::max<std::size_t>(count, 1));
  if (threads <= 1) {
    fn(std::size_t{0}, std::size_t{0}, count);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t w = 0; w < threads; ++w) {
    const std::size_t begin = count * w / threads;
    const std::size_t end = count * (w + 1) / threads;
    pool.emplace_back([&, w, begin, end] {
      try {
        fn(w, begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) {
    t.join();
  }
  for (auto& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
}

}  // namespace cvw

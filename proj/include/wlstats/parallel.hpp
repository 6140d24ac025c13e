#ifndef WLSTATS_PARALLEL_HPP
#define WLSTATS_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace wlstats {

// Runs body(worker, begin, end) over `count` items split into contiguous
// chunks, one per worker. With one worker (or one item) everything runs on
// the calling thread. The first exception thrown by any worker is rethrown.
template <typename Body>
void parallel_chunks(std::size_t count, unsigned threads, Body&& body) {
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads, count));
  if (workers == 1) {
    body(std::size_t{0}, std::size_t{0}, count);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          body(w, count * w / workers, count * (w + 1) / workers);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace wlstats

#endif  // WLSTATS_PARALLEL_HPP

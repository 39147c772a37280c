#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace prolab {

/// Fixed chunk size shared by every chunked computation. Chunk boundaries
/// (and therefore all results) do not depend on the thread count.
inline constexpr std::size_t kChunkSize = 4096;

/// Process-wide default worker count; 0 means hardware concurrency.
void set_default_threads(unsigned threads);
unsigned default_threads();

/// Runs fn(chunk_index) for every chunk in [0, n_chunks) on up to `threads`
/// workers. The first exception thrown by any chunk is rethrown.
template <typename Fn>
void parallel_chunks(std::size_t n_chunks, Fn&& fn, unsigned threads = 0) {
  if (threads == 0) threads = default_threads();
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n_chunks));
  if (threads <= 1) {
    for (std::size_t c = 0; c < n_chunks; ++c) fn(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= n_chunks) return;
      try {
        fn(c);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(n_chunks);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

inline std::size_t chunk_count(std::size_t n) { return (n + kChunkSize - 1) / kChunkSize; }

}  // namespace prolab

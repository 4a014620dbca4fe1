#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

namespace hatlab {

/// Process-wide cap on worker threads. 0 means "use all hardware threads".
void set_thread_count(unsigned n);
unsigned thread_count();

/// Splits [0, count) into `chunks` contiguous ranges of near-equal size.
/// The chunking depends only on `count` and `chunks`, never on the thread
/// count, so per-chunk results are reproducible.
template <typename Fn>
void for_each_chunk(std::uint64_t count, std::uint64_t chunks, Fn&& fn) {
  if (count == 0) return;
  chunks = std::clamp<std::uint64_t>(chunks, 1, count);
  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(thread_count(), chunks));
  auto range = [&](std::uint64_t c) {
    const std::uint64_t lo = count / chunks * c + std::min(c, count % chunks);
    const std::uint64_t hi = lo + count / chunks + (c < count % chunks ? 1 : 0);
    fn(c, lo, hi);
  };
  if (workers <= 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) range(c);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::uint64_t c = w; c < chunks; c += workers) range(c);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

/// Maps every chunk to a value and folds them in chunk order.
template <typename T, typename Map, typename Combine>
T chunked_reduce(std::uint64_t count, std::uint64_t chunks, T init, Map&& map,
                 Combine&& combine) {
  if (count == 0) return init;
  chunks = std::clamp<std::uint64_t>(chunks, 1, count);
  // optional<T> keeps vector<bool> bit-packing out of concurrent writes.
  std::vector<std::optional<T>> partial(chunks);
  for_each_chunk(count, chunks, [&](std::uint64_t c, std::uint64_t lo, std::uint64_t hi) {
    partial[c] = map(lo, hi);
  });
  T acc = init;
  for (auto& p : partial) acc = combine(std::move(acc), std::move(*p));
  return acc;
}

}  // namespace hatlab

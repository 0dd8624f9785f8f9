#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace omtope {

/// Splits [begin, end) into `threads` contiguous ranges, evaluates `chunk(lo, hi)`
/// on each and folds the partial results left to right with `merge`. With an
/// associative merge the result does not depend on the thread count.
template <typename T, typename Chunk, typename Merge>
T parallel_reduce(std::uint64_t begin, std::uint64_t end, unsigned threads, T init, Chunk chunk, Merge merge) {
  if (end <= begin) return init;
  const std::uint64_t total = end - begin;
  threads = static_cast<unsigned>(std::clamp<std::uint64_t>(threads, 1, total));
  if (threads == 1) return merge(std::move(init), chunk(begin, end));

  std::vector<T> partial(threads, init);
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      const std::uint64_t lo = begin + total * t / threads;
      const std::uint64_t hi = begin + total * (t + 1) / threads;
      pool.emplace_back([&, t, lo, hi] {
        try {
          partial[t] = chunk(lo, hi);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  for (auto& p : partial) init = merge(std::move(init), std::move(p));
  return init;
}

}  // namespace omtope

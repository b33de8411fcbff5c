#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace scatter {

// Evaluates fn(block) for every block index on up to `threads` workers and
// returns the results in block order. Each block must own its random stream,
// so the output does not depend on the worker count.
template <typename Result, typename Fn>
std::vector<Result> parallel_blocks(std::size_t n_blocks, unsigned threads, Fn&& fn) {
  std::vector<Result> results(n_blocks);
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), n_blocks));
  if (workers <= 1) {
    for (std::size_t b = 0; b < n_blocks; ++b) results[b] = fn(b);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t b = next.fetch_add(1); b < n_blocks; b = next.fetch_add(1)) {
          try {
            results[b] = fn(b);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            next.store(n_blocks);
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
  return results;
}

}  // namespace scatter

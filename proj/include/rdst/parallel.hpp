#pragma once

#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace rdst {

// 0 means "use all hardware threads".
inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Runs fn(begin, end) on disjoint blocks of [0, n). The partition depends
// only on (n, threads); work items must not share mutable state, so results
// are independent of scheduling. The first worker exception is rethrown.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  const unsigned t = resolve_threads(threads);
  if (n == 0) return;
  if (t <= 1 || n == 1) {
    fn(std::size_t{0}, n);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(t, n);
  const std::size_t block = (n + workers - 1) / workers;

  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&](std::size_t begin, std::size_t end) {
    try {
      fn(begin, end);
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) {
    const std::size_t begin = w * block;
    const std::size_t end = std::min(n, begin + block);
    if (begin >= end) break;
    pool.emplace_back(run, begin, end);
  }
  run(0, std::min(n, block));
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace rdst

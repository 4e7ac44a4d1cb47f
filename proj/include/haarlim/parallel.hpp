#pragma once
// Deterministic fan-out of an index range across a fixed thread count.  Each
// index is expected to write only its own preallocated slot, so results do
// not depend on the number of workers.

#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace haarlim {

inline void parallel_for(int begin, int end, int threads,
                         const std::function<void(int)>& body) {
  const int count = end - begin;
  if (count <= 0) return;
  if (threads < 1) threads = 1;
  if (threads > count) threads = count;
  if (threads == 1) {
    for (int i = begin; i < end; ++i) body(i);
    return;
  }
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (int i = begin + t; i < end; i += threads) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (std::thread& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace haarlim

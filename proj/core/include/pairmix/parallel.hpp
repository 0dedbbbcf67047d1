#ifndef PAIRMIX_PARALLEL_HPP_
#define PAIRMIX_PARALLEL_HPP_

#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace pairmix {

//! Advisory thread count from PAIRMIX_THREADS (default 1). Results never
//! depend on it: parallel loops write into index-addressed slots.
inline int configured_thread_count() {
  char const* env = std::getenv("PAIRMIX_THREADS");
  if (env == nullptr) {
    return 1;
  }
  int n = std::atoi(env);
  if (n < 1) {
    return 1;
  }
  return n > 64 ? 64 : n;
}

//! Runs fn(i) for i in [0, n), possibly on several threads. fn must only
//! write to state owned by index i.
template <typename F>
void parallel_for(std::size_t n, F&& fn) {
  int threads = configured_thread_count();
  if (threads <= 1 || n < 64) {
    for (std::size_t i = 0; i < n; ++i) {
      fn(i);
    }
    return;
  }
  if (static_cast<std::size_t>(threads) > n) {
    threads = static_cast<int>(n);
  }
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> workers;
  for (int w = 0; w < threads; ++w) {
    workers.emplace_back([&, w]() {
      try {
        for (std::size_t i = static_cast<std::size_t>(w); i < n;
             i += static_cast<std::size_t>(threads)) {
          fn(i);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) {
          first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : workers) {
    t.join();
  }
  if (first_error) {
    std::rethrow_exception(first_error);
  }
}

}  // namespace pairmix

#endif  // PAIRMIX_PARALLEL_HPP_

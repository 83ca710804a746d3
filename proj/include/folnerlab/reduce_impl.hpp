#pragma once

#include <exception>
#include <mutex>
#include <utility>

#include <omp.h>

namespace folnerlab {

template <class T, class F>
std::vector<T> parallel_map(std::size_t n, F&& f) {
  std::vector<T> out(n);
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto count = static_cast<std::ptrdiff_t>(n);
  const int threads = n < 256 ? 1 : thread_count();
#pragma omp parallel for schedule(static) num_threads(threads)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

template <class F>
std::vector<double> parallel_fill(std::size_t n, F&& f) {
  return parallel_map<double>(n, std::forward<F>(f));
}

}  // namespace folnerlab

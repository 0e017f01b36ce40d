#pragma once

#include <cstddef>
#include <exception>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace entconv {

// Every data-parallel kernel (multi-start searches, batch measure
// evaluation, scan rows) takes an Execution. `serial` is the reference path
// the tests compare against; `parallel` distributes independent indices
// over OpenMP threads. Both produce identical results because each index
// owns its derived sub-seed and results are merged in index order.
enum class Execution { serial, parallel };

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// Evaluates fn(i) for i in [0, n) and stores the results by index.
template <class T, class Fn>
std::vector<T> map_indices(std::size_t n, Execution exec, Fn&& fn) {
  std::vector<T> out(n);
  if (exec == Execution::serial || n < 2) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::exception_ptr failure;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    try {
      out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
    } catch (...) {
#ifdef _OPENMP
#pragma omp critical(entconv_failure)
#endif
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

// Index of the largest key; ties resolve to the lowest index so serial and
// parallel merges agree.
template <class T, class Key>
std::size_t argmax_by(const std::vector<T>& xs, Key&& key) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (key(xs[i]) > key(xs[best])) best = i;
  return best;
}

}  // namespace entconv

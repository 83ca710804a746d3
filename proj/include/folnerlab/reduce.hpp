#pragma once

// Deterministic parallel evaluation. Work items are evaluated in parallel
// into per-index slots; every reduction is a fixed pairwise tree over the
// slot order, so results do not depend on the number of threads.

#include <cstddef>
#include <span>
#include <vector>

namespace folnerlab {

/// Pairwise (tree) sum. The tree shape depends only on values.size().
double pairwise_sum(std::span<const double> values);

/// Number of worker threads used by parallel_fill (default 1).
void set_thread_count(int threads);
int thread_count();

/// out[i] = f(i) for i in [0, n), evaluated by up to thread_count() workers.
/// An exception thrown by any f(i) is rethrown on the caller.
template <class F>
std::vector<double> parallel_fill(std::size_t n, F&& f);

/// Same as parallel_fill for an arbitrary default-constructible slot type.
template <class T, class F>
std::vector<T> parallel_map(std::size_t n, F&& f);

}  // namespace folnerlab

#include "folnerlab/reduce_impl.hpp"

#include "folnerlab/reduce.hpp"

#include <algorithm>
#include <atomic>

namespace folnerlab {

namespace {
std::atomic<int> g_threads{1};
constexpr std::size_t kLeaf = 8;
}  // namespace

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= kLeaf) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

void set_thread_count(int threads) { g_threads = std::max(1, threads); }

int thread_count() { return g_threads; }

}  // namespace folnerlab

#pragma once

// Recurrence statistics along Følner sequences: Khintchine sets, visit
// densities, epsilon-return densities and the dissipativity probe. Lower and
// upper envelopes are running extrema over the computed indices only
// (finite-range envelopes), never limit claims.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "folnerlab/averaging.hpp"
#include "folnerlab/folner.hpp"
#include "folnerlab/observable.hpp"
#include "folnerlab/systems.hpp"

namespace folnerlab {

struct DensityEstimate {
  std::size_t n = 0;
  std::size_t hits = 0;
  std::size_t cardinality = 0;
  double ratio = 0.0;
  double lower_envelope = 0.0;
  double upper_envelope = 0.0;
};

/// Closed form of the integral of phi(x) phi(T_g x) for a circle rotation and
/// a constant, cosine, sine or arc observable; nullopt otherwise.
std::optional<double> exact_correlation(const Action& action, const Observable& phi, const Element& g);

/// Exact when available, otherwise the mean of phi(x) phi(T_g x) over
/// `sample_count` points drawn with `seed`. The same points serve every g.
double correlation(const Action& action, const Observable& phi, const Element& g, const MeasureSampler& sampler,
                   std::size_t sample_count, std::uint64_t seed);

struct KhintchineOptions {
  double epsilon = 0.01;
  std::size_t sample_count = 10'000;  // Monte Carlo path only
  std::uint64_t seed = 0;
};

/// Density of {g in F_n : corr(g) > (integral phi)^2 - epsilon} per index.
/// phi must be bounded, nonnegative and of positive mean.
std::vector<DensityEstimate> khintchine_density(const Action& action, const Observable& phi,
                                                const FolnerSequence& seq, std::span<const std::size_t> indices,
                                                const MeasureSampler& sampler, const KhintchineOptions& options);

/// Proportion of g in F_n with indicator(T_g x) = 1.
std::vector<DensityEstimate> visit_density(const Action& action, const Point& x, const Observable& indicator,
                                           const FolnerSequence& seq, std::span<const std::size_t> indices);

/// Proportion of g in F_n with dist(x, T_g x) < epsilon. Throws
/// MetricUnavailable when the phase space carries no metric.
std::vector<DensityEstimate> qwap_density(const Action& action, const Point& x, double epsilon,
                                          const FolnerSequence& seq, std::span<const std::size_t> indices);

struct DissipativityTrace {
  AverageTrace trace;
  std::vector<double> bounds;  // sup|phi| (2 r + 1) / |F_n| when a support radius is declared
};

/// Requires a declared support radius on phi or a compact phase space.
DissipativityTrace dissipativity_probe(const Action& action, const Observable& phi, const Point& x,
                                       const FolnerSequence& seq, std::span<const std::size_t> indices);

}  // namespace folnerlab

#pragma once

// Empirical ergodic components: the component measure at x is represented by
// its moments against a finite dictionary of bounded observables.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "folnerlab/folner.hpp"
#include "folnerlab/observable.hpp"
#include "folnerlab/systems.hpp"

namespace folnerlab {

struct ComponentEstimate {
  Point x;
  std::vector<std::string> labels;
  std::vector<double> estimates;    // A(F_n, phi)(x) per dictionary entry
  std::vector<double> oscillation;  // spread over the trailing indices n/16, n/8, n/4, n/2, n
  std::size_t n = 0;
  std::size_t cardinality = 0;
};

/// Averages of every dictionary entry over F_n, sharing one orbit.
std::vector<double> orbit_averages(const Action& action, const FiniteSubset& F, const Point& x,
                                   const std::vector<Observable>& dictionary);

ComponentEstimate component_estimate(const Action& action, const FolnerSequence& seq, const Point& x,
                                     const std::vector<Observable>& dictionary, std::size_t n);

struct DisintegrationRow {
  std::string label;
  double lhs = 0.0;        // Monte Carlo estimate of the integral of phi
  double rhs = 0.0;        // Monte Carlo mean of the component estimates
  double diff = 0.0;
  double tolerance = 0.0;  // 3 sigma of the matched differences
  std::optional<double> exact;
  bool within_tolerance = false;
};

/// Both sides use the same sampled points (seeded by `seed`).
std::vector<DisintegrationRow> disintegration_check(const Action& action, const FolnerSequence& seq,
                                                    const MeasureSampler& sampler,
                                                    const std::vector<Observable>& dictionary, std::size_t n,
                                                    std::size_t sample_count, std::uint64_t seed);

struct ErgodicityScore {
  double score = 0.0;                // max over dictionary entries
  std::vector<double> spread;        // population stddev per entry
  std::vector<std::string> labels;
};

/// Population standard deviation of the component estimates across points.
/// Grouping points into components is left to the caller.
ErgodicityScore ergodicity_score(const Action& action, const FolnerSequence& seq, const std::vector<Point>& points,
                                 const std::vector<Observable>& dictionary, std::size_t n);

}  // namespace folnerlab

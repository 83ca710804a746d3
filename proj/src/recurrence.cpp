#include "folnerlab/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "folnerlab/error.hpp"
#include "folnerlab/reduce.hpp"

namespace folnerlab {

namespace {

void check_indices(std::span<const std::size_t> indices) {
  if (indices.empty()) throw ConfigError("density estimate needs at least one index");
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] < 1) throw ConfigError("Følner indices start at 1");
    if (i > 0 && indices[i] <= indices[i - 1]) throw ConfigError("indices must be strictly increasing");
  }
}

template <class Hit>
std::vector<DensityEstimate> density_trace(const FolnerSequence& seq, std::span<const std::size_t> indices,
                                           Hit&& hit) {
  check_indices(indices);
  std::vector<DensityEstimate> out;
  for (const auto n : indices) {
    const FiniteSubset F = seq.at(n);
    const auto flags = parallel_fill(F.size(), [&](std::size_t i) { return hit(F[i]) ? 1.0 : 0.0; });
    DensityEstimate d;
    d.n = n;
    d.cardinality = F.size();
    d.hits = static_cast<std::size_t>(pairwise_sum(flags));
    d.ratio = static_cast<double>(d.hits) / static_cast<double>(d.cardinality);
    d.lower_envelope = out.empty() ? d.ratio : std::min(out.back().lower_envelope, d.ratio);
    d.upper_envelope = out.empty() ? d.ratio : std::max(out.back().upper_envelope, d.ratio);
    out.push_back(d);
  }
  return out;
}

}  // namespace

std::optional<double> exact_correlation(const Action& action, const Observable& phi, const Element& g) {
  const auto* rot = dynamic_cast<const RotationAction*>(&action);
  if (!rot) return std::nullopt;
  const auto& p = phi.params();
  switch (phi.kind()) {
    case ObservableKind::constant:
      return p.value * p.value;
    case ObservableKind::cosine:
    case ObservableKind::sine: {
      if (p.coordinate != 0) return std::nullopt;
      if (p.frequency == 0) return phi.kind() == ObservableKind::cosine ? 1.0 : 0.0;
      const double theta = rotate(0.0, g[0], rot->alpha());
      return 0.5 * std::cos(2.0 * std::numbers::pi * p.frequency * theta);
    }
    case ObservableKind::arc: {
      if (p.coordinate != 0) return std::nullopt;
      const double a = p.value;
      const double theta = rotate(0.0, g[0], rot->alpha());
      return std::max(a - theta, 0.0) + std::max(theta + a - 1.0, 0.0);
    }
    default:
      return std::nullopt;
  }
}

double correlation(const Action& action, const Observable& phi, const Element& g, const MeasureSampler& sampler,
                   std::size_t sample_count, std::uint64_t seed) {
  if (!phi.bounded()) throw PreconditionError("correlation needs a bounded observable");
  action.group().check(g);
  if (auto exact = exact_correlation(action, phi, g)) return *exact;
  if (sample_count < 1) throw ConfigError("correlation needs at least one sample");
  const auto points = sampler.sample(sample_count, seed);
  const auto values = parallel_fill(points.size(), [&](std::size_t j) {
    return phi(points[j]) * phi(action.apply(g, points[j]));
  });
  return pairwise_sum(values) / static_cast<double>(points.size());
}

std::vector<DensityEstimate> khintchine_density(const Action& action, const Observable& phi,
                                                const FolnerSequence& seq, std::span<const std::size_t> indices,
                                                const MeasureSampler& sampler, const KhintchineOptions& options) {
  if (!(options.epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  if (!phi.bounded()) throw PreconditionError("Khintchine density needs a bounded observable");
  if (!(seq.group() == action.group())) throw DescriptorMismatch("sequence and action live in different groups");

  std::vector<Point> points;
  const bool exact_path = exact_correlation(action, phi, action.group().identity()).has_value();
  if (!exact_path) {
    if (options.sample_count < 1) throw ConfigError("Monte Carlo correlation needs samples");
    points = sampler.sample(options.sample_count, options.seed);
  }

  double mean = 0.0;
  if (auto m = exact_integral(action, phi)) {
    mean = *m;
  } else {
    if (points.empty()) points = sampler.sample(std::max<std::size_t>(options.sample_count, 1), options.seed);
    const auto vals = parallel_fill(points.size(), [&](std::size_t j) { return phi(points[j]); });
    mean = pairwise_sum(vals) / static_cast<double>(points.size());
  }
  if (!(mean > 0.0)) throw PreconditionError("Khintchine density needs an observable of positive mean");
  if (!points.empty()) {
    for (const auto& x : points)
      if (phi(x) < 0.0) throw PreconditionError("Khintchine density needs a nonnegative observable");
  } else if (phi.kind() == ObservableKind::cosine || phi.kind() == ObservableKind::sine) {
    throw PreconditionError("Khintchine density needs a nonnegative observable");
  } else if (phi.kind() == ObservableKind::constant && phi.params().value < 0.0) {
    throw PreconditionError("Khintchine density needs a nonnegative observable");
  }

  const double threshold = mean * mean - options.epsilon;
  return density_trace(seq, indices, [&](const Element& g) {
    if (exact_path) return *exact_correlation(action, phi, g) > threshold;
    std::vector<double> vals(points.size());
    for (std::size_t j = 0; j < points.size(); ++j) vals[j] = phi(points[j]) * phi(action.apply(g, points[j]));
    return pairwise_sum(vals) / static_cast<double>(points.size()) > threshold;
  });
}

std::vector<DensityEstimate> visit_density(const Action& action, const Point& x, const Observable& indicator,
                                           const FolnerSequence& seq, std::span<const std::size_t> indices) {
  if (!indicator.is_indicator())
    throw PreconditionError("visit density needs an indicator observable, got '" + indicator.label() + "'");
  action.check_point(x);
  return density_trace(seq, indices, [&](const Element& g) { return indicator(action.apply(g, x)) == 1.0; });
}

std::vector<DensityEstimate> qwap_density(const Action& action, const Point& x, double epsilon,
                                          const FolnerSequence& seq, std::span<const std::size_t> indices) {
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  action.check_point(x);
  if (!action.distance(x, x)) throw MetricUnavailable("phase space of '" + action.describe() + "' has no metric");
  return density_trace(seq, indices, [&](const Element& g) { return *action.distance(x, action.apply(g, x)) < epsilon; });
}

DissipativityTrace dissipativity_probe(const Action& action, const Observable& phi, const Point& x,
                                       const FolnerSequence& seq, std::span<const std::size_t> indices) {
  const auto radius = phi.support_radius();
  if (!radius && !action.compact())
    throw PreconditionError("dissipativity probe on a non-compact space needs an observable with declared support");
  DissipativityTrace out;
  out.trace = average_trace(action, seq, phi, x, indices);
  if (radius) {
    const double width = 2.0 * static_cast<double>(*radius) + 1.0;
    for (const auto& p : out.trace.points)
      out.bounds.push_back(phi.sup_bound() * width / static_cast<double>(p.cardinality));
  }
  return out;
}

}  // namespace folnerlab

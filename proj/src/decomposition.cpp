#include "folnerlab/decomposition.hpp"

#include <algorithm>
#include <cmath>

#include "folnerlab/error.hpp"
#include "folnerlab/reduce.hpp"

namespace folnerlab {

namespace {

void require_dictionary(const std::vector<Observable>& dictionary) {
  if (dictionary.empty()) throw ConfigError("observable dictionary is empty");
  for (const auto& phi : dictionary)
    if (!phi.bounded()) throw PreconditionError("dictionary entry '" + phi.label() + "' is unbounded");
}

std::vector<double> orbit_averages_serial(const Action& action, const FiniteSubset& F, const Point& x,
                                          const std::vector<Observable>& dictionary) {
  std::vector<std::vector<double>> values(dictionary.size(), std::vector<double>(F.size()));
  for (std::size_t i = 0; i < F.size(); ++i) {
    const Point y = action.apply(F[i], x);
    for (std::size_t j = 0; j < dictionary.size(); ++j) values[j][i] = dictionary[j](y);
  }
  std::vector<double> out;
  for (std::size_t j = 0; j < dictionary.size(); ++j) {
    const double s = dictionary[j].sup_bound();
    out.push_back(std::clamp(pairwise_sum(values[j]) / static_cast<double>(F.size()), -s, s));
  }
  return out;
}

}  // namespace

std::vector<double> orbit_averages(const Action& action, const FiniteSubset& F, const Point& x,
                                   const std::vector<Observable>& dictionary) {
  if (F.empty()) throw EmptySetError("component estimate over an empty set");
  require_dictionary(dictionary);
  action.check_point(x);
  const auto orbit = parallel_map<Point>(F.size(), [&](std::size_t i) { return action.apply(F[i], x); });
  std::vector<double> out;
  for (const auto& phi : dictionary) {
    const auto values = parallel_fill(orbit.size(), [&](std::size_t i) { return phi(orbit[i]); });
    const double s = phi.sup_bound();
    out.push_back(std::clamp(pairwise_sum(values) / static_cast<double>(F.size()), -s, s));
  }
  return out;
}

ComponentEstimate component_estimate(const Action& action, const FolnerSequence& seq, const Point& x,
                                     const std::vector<Observable>& dictionary, std::size_t n) {
  if (n < 1) throw ConfigError("component estimate needs n >= 1");
  ComponentEstimate out;
  out.x = x;
  out.n = n;
  for (const auto& phi : dictionary) out.labels.push_back(phi.label());
  const FiniteSubset Fn = seq.at(n);
  out.cardinality = Fn.size();
  out.estimates = orbit_averages(action, Fn, x, dictionary);

  std::vector<std::size_t> trailing;
  for (std::size_t div : {16, 8, 4, 2}) {
    const std::size_t m = n / div;
    if (m >= 1 && (trailing.empty() || trailing.back() != m)) trailing.push_back(m);
  }
  std::vector<double> lo = out.estimates, hi = out.estimates;
  for (const auto m : trailing) {
    if (m == n) continue;
    const auto vals = orbit_averages(action, seq.at(m), x, dictionary);
    for (std::size_t j = 0; j < vals.size(); ++j) {
      lo[j] = std::min(lo[j], vals[j]);
      hi[j] = std::max(hi[j], vals[j]);
    }
  }
  for (std::size_t j = 0; j < lo.size(); ++j) out.oscillation.push_back(hi[j] - lo[j]);
  return out;
}

std::vector<DisintegrationRow> disintegration_check(const Action& action, const FolnerSequence& seq,
                                                    const MeasureSampler& sampler,
                                                    const std::vector<Observable>& dictionary, std::size_t n,
                                                    std::size_t sample_count, std::uint64_t seed) {
  if (sample_count < 2) throw ConfigError("disintegration check needs at least two samples");
  require_dictionary(dictionary);
  const FiniteSubset Fn = seq.at(n);
  const auto points = sampler.sample(sample_count, seed);
  using Row = std::vector<double>;
  // Per sample: phi(x_j) followed by the component estimates at x_j.
  const auto per_point = parallel_map<Row>(points.size(), [&](std::size_t j) {
    Row row;
    for (const auto& phi : dictionary) row.push_back(phi(points[j]));
    const auto est = orbit_averages_serial(action, Fn, points[j], dictionary);
    row.insert(row.end(), est.begin(), est.end());
    return row;
  });

  const auto N = static_cast<double>(points.size());
  std::vector<DisintegrationRow> out;
  for (std::size_t k = 0; k < dictionary.size(); ++k) {
    std::vector<double> direct(points.size()), comp(points.size()), delta(points.size());
    for (std::size_t j = 0; j < points.size(); ++j) {
      direct[j] = per_point[j][k];
      comp[j] = per_point[j][dictionary.size() + k];
      delta[j] = direct[j] - comp[j];
    }
    DisintegrationRow r;
    r.label = dictionary[k].label();
    r.lhs = pairwise_sum(direct) / N;
    r.rhs = pairwise_sum(comp) / N;
    r.diff = std::fabs(r.lhs - r.rhs);
    const double mean_delta = pairwise_sum(delta) / N;
    std::vector<double> sq(points.size());
    for (std::size_t j = 0; j < points.size(); ++j) sq[j] = (delta[j] - mean_delta) * (delta[j] - mean_delta);
    const double sd = std::sqrt(pairwise_sum(sq) / (N - 1.0));
    r.tolerance = 3.0 * sd / std::sqrt(N);
    r.exact = exact_integral(action, dictionary[k]);
    r.within_tolerance = r.diff <= r.tolerance + 1e-12;
    out.push_back(std::move(r));
  }
  return out;
}

ErgodicityScore ergodicity_score(const Action& action, const FolnerSequence& seq, const std::vector<Point>& points,
                                 const std::vector<Observable>& dictionary, std::size_t n) {
  if (points.empty()) throw PreconditionError("ergodicity score needs at least one point");
  require_dictionary(dictionary);
  const FiniteSubset Fn = seq.at(n);
  std::vector<std::vector<double>> est;
  for (const auto& x : points) est.push_back(orbit_averages(action, Fn, x, dictionary));
  ErgodicityScore out;
  const auto P = static_cast<double>(points.size());
  for (std::size_t k = 0; k < dictionary.size(); ++k) {
    std::vector<double> col(points.size());
    for (std::size_t j = 0; j < points.size(); ++j) col[j] = est[j][k];
    const double mean = pairwise_sum(col) / P;
    for (auto& v : col) v = (v - mean) * (v - mean);
    const double sd = std::sqrt(pairwise_sum(col) / P);
    out.labels.push_back(dictionary[k].label());
    out.spread.push_back(sd);
    out.score = std::max(out.score, sd);
  }
  return out;
}

}  // namespace folnerlab

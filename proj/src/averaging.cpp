#include "folnerlab/averaging.hpp"

#include <algorithm>
#include <cmath>

#include "folnerlab/error.hpp"
#include "folnerlab/reduce.hpp"

namespace folnerlab {

namespace {

double clamp_to_bound(double value, const Observable& phi, std::size_t power = 1) {
  const auto sup = phi.maybe_sup_bound();
  if (!sup) return value;
  const double bound = std::pow(*sup, static_cast<double>(power));
  return std::clamp(value, -bound, bound);
}

void require_bounded(const Observable& phi, bool allow_unbounded) {
  if (!phi.bounded() && !allow_unbounded)
    throw PreconditionError("observable '" + phi.label() + "' is unbounded; averaging it needs an explicit override");
}

}  // namespace

double ergodic_average(const Action& action, const FiniteSubset& F, const Observable& phi, const Point& x,
                       bool allow_unbounded) {
  if (F.empty()) throw EmptySetError("ergodic average over an empty set");
  if (!(F.group() == action.group()))
    throw DescriptorMismatch("set lives in " + F.group().name() + " but the action is of " + action.group().name());
  require_bounded(phi, allow_unbounded);
  action.check_point(x);
  const auto values = parallel_fill(F.size(), [&](std::size_t i) { return phi(action.apply(F[i], x)); });
  const double mean = pairwise_sum(values) / static_cast<double>(F.size());
  return clamp_to_bound(mean, phi);
}

void update_oscillation(AverageTrace& trace) {
  const std::size_t w = std::max<std::size_t>(trace.window, 1);
  for (std::size_t i = 0; i < trace.points.size(); ++i) {
    const std::size_t first = i + 1 >= w ? i + 1 - w : 0;
    double lo = trace.points[i].value, hi = lo;
    for (std::size_t j = first; j <= i; ++j) {
      lo = std::min(lo, trace.points[j].value);
      hi = std::max(hi, trace.points[j].value);
    }
    trace.points[i].oscillation = hi - lo;
  }
}

AverageTrace average_trace(const Action& action, const FolnerSequence& seq, const Observable& phi, const Point& x,
                           std::span<const std::size_t> indices, std::size_t window, bool allow_unbounded) {
  if (indices.empty()) throw ConfigError("average trace needs at least one index");
  for (std::size_t i = 1; i < indices.size(); ++i)
    if (indices[i] <= indices[i - 1]) throw ConfigError("trace indices must be strictly increasing");
  if (window == 0) throw ConfigError("trace window must be >= 1");
  AverageTrace trace;
  trace.window = window;
  for (const auto n : indices) {
    const FiniteSubset F = seq.at(n);
    trace.points.push_back({n, F.size(), ergodic_average(action, F, phi, x, allow_unbounded), 0.0});
  }
  update_oscillation(trace);
  return trace;
}

TranslationCheck translation_identity_check(const ActionPtr& action, const FiniteSubset& F, const Observable& phi,
                                            const Point& x, const Element& h) {
  action->group().check(h);
  TranslationCheck out;
  out.lhs = ergodic_average(*action, translate(h, F), phi, x);
  out.rhs = ergodic_average(*action, F, observables::compose(phi, action, h), x);
  out.diff = std::fabs(out.lhs - out.rhs);
  return out;
}

PerturbationCheck perturbation_bound_check(const Action& action, const FiniteSubset& F, const FiniteSubset& C,
                                           const Observable& phi, const Point& x) {
  if (F.empty() || C.empty()) throw EmptySetError("perturbation check needs nonempty F and C");
  PerturbationCheck out;
  out.average_f = ergodic_average(action, F, phi, x);
  out.average_c = ergodic_average(action, C, phi, x);
  out.lhs = std::fabs(out.average_f - out.average_c);
  out.symmetric_difference = symmetric_difference_size(F, C);
  out.bound = 2.0 * phi.sup_bound() * static_cast<double>(out.symmetric_difference) / static_cast<double>(F.size());
  return out;
}

double multiple_average(const Action& action, std::span<const Element> g_tuple, const FiniteSubset& K,
                        const Observable& phi, const Point& x) {
  if (g_tuple.empty()) throw ConfigError("multiple average needs at least one group element");
  if (K.empty()) throw EmptySetError("multiple average over an empty set");
  if (!(K.group() == GroupDescriptor::integers())) throw DescriptorMismatch("multiple average needs K inside Z");
  const auto& G = action.group();
  if (!G.is_z_module()) throw PreconditionError("multiple average needs a Z-module group, got " + G.name());
  for (const auto& g : g_tuple) G.check(g);
  require_bounded(phi, false);
  action.check_point(x);
  const auto values = parallel_fill(K.size(), [&](std::size_t i) {
    const std::int64_t t = K.row(i)[0];
    double prod = 1.0;
    for (const auto& g : g_tuple) prod *= phi(action.apply(G.scalar_multiple(t, g), x));
    return prod;
  });
  const double mean = pairwise_sum(values) / static_cast<double>(K.size());
  return clamp_to_bound(mean, phi, g_tuple.size());
}

double commutativity_defect(std::span<const ActionPtr> actions, std::uint64_t seed) {
  if (actions.empty()) return 0.0;
  const auto& first = *actions[0];
  std::vector<Point> probes{first.default_point()};
  if (first.compact()) {
    Rng rng(seed);
    for (int i = 0; i < 4; ++i) probes.push_back(first.sample_point(rng));
  }
  auto gap = [&](const Point& a, const Point& b) {
    if (auto d = first.distance(a, b)) return *d;
    return points_close(a, b, 1e-12) ? 0.0 : 1.0;
  };
  double defect = 0.0;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    for (std::size_t j = i + 1; j < actions.size(); ++j) {
      const auto& A = *actions[i];
      const auto& B = *actions[j];
      for (const auto& g : A.group().generators()) {
        for (const auto& h : B.group().generators()) {
          for (const auto& x : probes) {
            defect = std::max(defect, gap(A.apply(g, B.apply(h, x)), B.apply(h, A.apply(g, x))));
          }
        }
      }
    }
  }
  return defect;
}

double iterated_product_average(std::span<const ActionPtr> actions, std::span<const FolnerSequence> seqs,
                                const Observable& phi, const Point& x, std::size_t n) {
  if (actions.empty()) throw ConfigError("product average needs at least one action");
  if (actions.size() != seqs.size()) throw ConfigError("product average needs one Følner sequence per action");
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (!actions[i]) throw ConfigError("product average got a null action");
    if (actions[i]->phase_space() != actions[0]->phase_space())
      throw PreconditionError("product average needs actions on one phase space");
    if (!(seqs[i].group() == actions[i]->group()))
      throw DescriptorMismatch("sequence '" + seqs[i].label() + "' does not live in " + actions[i]->group().name());
  }
  require_bounded(phi, false);
  actions[0]->check_point(x);
  const double defect = commutativity_defect(actions);
  if (defect > 1e-12)
    throw CommutativityFailure("actions fail to commute on probes (defect " + std::to_string(defect) + ")");

  std::vector<FiniteSubset> sets;
  std::size_t total = 1;
  for (const auto& s : seqs) {
    sets.push_back(s.at(n));
    total *= sets.back().size();
  }
  const std::size_t l = sets.size();
  const auto values = parallel_fill(total, [&](std::size_t flat) {
    std::vector<std::size_t> idx(l);
    for (std::size_t i = l; i-- > 0;) {
      idx[i] = flat % sets[i].size();
      flat /= sets[i].size();
    }
    Point y = x;
    for (std::size_t i = l; i-- > 0;) y = actions[i]->apply(sets[i][idx[i]], y);
    return phi(y);
  });
  return clamp_to_bound(pairwise_sum(values) / static_cast<double>(total), phi);
}

}  // namespace folnerlab

#pragma once

// Ergodic averages A(F, phi)(x) = (1/|F|) sum_{g in F} phi(T_g x) and their
// multiple and product-group variants. Every sum is evaluated in parallel
// into per-element slots and reduced by a fixed pairwise tree.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "folnerlab/finite_set.hpp"
#include "folnerlab/folner.hpp"
#include "folnerlab/observable.hpp"
#include "folnerlab/systems.hpp"

namespace folnerlab {

/// Throws EmptySetError for empty F and PreconditionError for an unbounded
/// phi unless `allow_unbounded` is set. Bounded results are clamped to
/// [-sup, sup] to absorb rounding.
double ergodic_average(const Action& action, const FiniteSubset& F, const Observable& phi, const Point& x,
                       bool allow_unbounded = false);

struct TracePoint {
  std::size_t n = 0;
  std::size_t cardinality = 0;
  double value = 0.0;
  double oscillation = 0.0;  // max - min over the trailing window ending here
};

struct AverageTrace {
  std::vector<TracePoint> points;
  std::size_t window = 5;
  std::optional<double> declared_limit;

  /// Oscillation at the last point; 0 for an empty trace.
  double final_oscillation() const { return points.empty() ? 0.0 : points.back().oscillation; }
};

/// Fills the oscillation column of `trace` from its values.
void update_oscillation(AverageTrace& trace);

AverageTrace average_trace(const Action& action, const FolnerSequence& seq, const Observable& phi, const Point& x,
                           std::span<const std::size_t> indices, std::size_t window = 5,
                           bool allow_unbounded = false);

struct TranslationCheck {
  double lhs = 0.0;  // A(hF, phi)(x)
  double rhs = 0.0;  // A(F, phi o T_h)(x)
  double diff = 0.0;
};

TranslationCheck translation_identity_check(const ActionPtr& action, const FiniteSubset& F, const Observable& phi,
                                            const Point& x, const Element& h);

struct PerturbationCheck {
  double average_f = 0.0;
  double average_c = 0.0;
  double lhs = 0.0;    // |A(F) - A(C)|
  double bound = 0.0;  // 2 sup|phi| |F sym diff C| / |F|
  std::size_t symmetric_difference = 0;
};

PerturbationCheck perturbation_bound_check(const Action& action, const FiniteSubset& F, const FiniteSubset& C,
                                           const Observable& phi, const Point& x);

/// (1/|K|) sum_{t in K} prod_i phi(T_{t g_i} x) for K in Z and a group that is
/// a Z-module (Z or Z^d).
double multiple_average(const Action& action, std::span<const Element> g_tuple, const FiniteSubset& K,
                        const Observable& phi, const Point& x);

/// Average of phi(T^1_{g_1} ... T^l_{g_l} x) over F_n^(1) x ... x F_n^(l).
/// The actions must share a phase space and commute; a probe on generators
/// and sampled points throws CommutativityFailure beyond 1e-12.
double iterated_product_average(std::span<const ActionPtr> actions, std::span<const FolnerSequence> seqs,
                                const Observable& phi, const Point& x, std::size_t n);

/// Largest probe discrepancy between T_g T_h x and T_h T_g x.
double commutativity_defect(std::span<const ActionPtr> actions, std::uint64_t seed = 0x5eed);

}  // namespace folnerlab

#pragma once

// Følner sequences n -> F_n (n >= 1) and exact invariance diagnostics.
//
// Only sequences are modelled, never general nets: every experiment is
// indexed by n in N, which is the sigma-compact case where summing
// sequences exist.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "folnerlab/finite_set.hpp"
#include "folnerlab/observable.hpp"
#include "folnerlab/systems.hpp"

namespace folnerlab {

/// Exact nonnegative ratio of cardinalities.
using Ratio = boost::rational<std::int64_t>;

std::string to_string(const Ratio& r);
inline double to_double(const Ratio& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

/// Default cap on |U_{k<n} F_k^{-1} F_n| when computing the Shulman ratio.
inline constexpr std::size_t kDefaultElementBudget = 10'000'000;

enum class FamilyTag { intervals, boxes, heisenberg_boxes, djr, perturbed, adversarial, custom, product };

std::string_view to_string(FamilyTag tag);

class FolnerSequence {
 public:
  using Generator = std::function<FiniteSubset(std::size_t)>;

  FolnerSequence(GroupDescriptor group, FamilyTag family, std::string label, Generator generator);

  const GroupDescriptor& group() const { return group_; }
  FamilyTag family() const { return family_; }
  const std::string& label() const { return label_; }

  /// F_n for n >= 1. Throws EmptySetError if the generator yields an empty
  /// set and DescriptorMismatch if it yields a set in another group.
  FiniteSubset at(std::size_t n) const;
  FiniteSubset operator()(std::size_t n) const { return at(n); }

 private:
  GroupDescriptor group_;
  FamilyTag family_;
  std::string label_;
  Generator generator_;
};

namespace families {

/// [0, n) in Z.
FolnerSequence intervals();
/// [0, n)^d in Z^d (Z when d == 1).
FolnerSequence boxes(int d);
/// {(a, b, c) : 0 <= a, b < n, 0 <= c < n^2} in H3.
FolnerSequence heisenberg_boxes();
/// {n^2, n^2 + 1, ..., n^2 + n} in Z: Tempelman but not increasing.
FolnerSequence djr();
/// F_n^(1) x ... x F_n^(l) in the direct product of the factor groups.
FolnerSequence product(std::vector<FolnerSequence> factors);
/// F_n = F for every n.
FolnerSequence constant(FiniteSubset F);
FolnerSequence custom(GroupDescriptor group, std::string label, FolnerSequence::Generator generator);

}  // namespace families

/// Parses "intervals", "boxes:d=2", "h3boxes", "djr",
/// "perturb(base=<family>,d=<tail-sqrt|origin|empty>)" and
/// "product(<family>;<family>;...)", validated against `group`.
FolnerSequence make_family(std::string_view spec, const GroupDescriptor& group);

/// |gF (sym diff) F| / |F|, in [0, 2].
Ratio boundary_ratio(const FiniteSubset& F, const Element& g);
/// |KF (sym diff) F| / |F|.
Ratio uniform_boundary_ratio(const FiniteSubset& F, const FiniteSubset& K);
/// |F^{-1} F| / |F|.
Ratio tempelman_ratio(const FiniteSubset& F);

struct ConditionRatios {
  Ratio tempelman;  // |F_n^{-1} F_n| / |F_n|
  Ratio shulman;    // |U_{k<n} F_k^{-1} F_n| / |F_n|, 0 at n = 1
};

/// Throws BudgetExceeded when the Shulman union outgrows `budget` elements.
ConditionRatios condition_ratios(const FolnerSequence& seq, std::size_t n,
                                 std::size_t budget = kDefaultElementBudget);

struct SummingReport {
  bool nested = true;       // F_k subset of F_{k+1} for all k < n
  Ratio max_uniform_ratio;  // max over probes g of boundary_ratio(F_n, g)
};

SummingReport is_summing_prefix(const FolnerSequence& seq, std::size_t n, const FiniteSubset& probes);

/// C_n = F_n (sym diff) D_n. Throws DegeneratePerturbation when C_n is empty.
FolnerSequence perturb(const FolnerSequence& base, FolnerSequence::Generator perturbation,
                       std::string perturbation_label = "custom");

/// F'_n = [0, n) u {i_n} with i_n >= n the first orbit index below `horizon`
/// where phi(T_{i_n} x0) >= n (n + 1), so that A(F'_n, phi)(x0) >= n while
/// boundary_ratio(+-1, F'_n) <= 4 / (n + 1). Requires a Z-action and an
/// observable flagged unbounded; F'_n throws SearchExhausted when no index
/// qualifies.
FolnerSequence adversarial_divergence_sequence(ActionPtr action, Observable phi, Point x0, std::int64_t horizon);

}  // namespace folnerlab

#pragma once

// Real-valued test functions on phase spaces, with sup-norm metadata.

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "folnerlab/systems.hpp"

namespace folnerlab {

enum class ObservableKind {
  constant,
  cosine,     // cos(2 pi k x_coord)
  sine,       // sin(2 pi k x_coord)
  arc,        // 1_[0,a)(x_coord)
  cylinder,   // w(e) for a shift configuration
  component,  // 1 if a two-circle point lies on component j
  inverse_sqrt,
  tent,       // max(0, 1 - |site| / (w + 1)) on the translation line
  site,       // 1 if the line point sits at a given site
  composite,
};

/// Library parameters of an observable; meaning depends on the kind.
struct ObservableParams {
  double value = 0.0;      // constant c, arc length a
  int frequency = 0;       // k for cosine/sine
  std::size_t coordinate = 0;
  int component = 0;
  std::int64_t width = 0;  // tent half-width, site position
};

class Observable {
 public:
  using Evaluator = std::function<double(const Point&)>;

  /// `sup_bound` empty means unbounded.
  Observable(Evaluator eval, std::optional<double> sup_bound, std::string label,
             ObservableKind kind = ObservableKind::composite, ObservableParams params = {});

  double operator()(const Point& x) const { return eval_(x); }
  bool bounded() const { return sup_bound_.has_value(); }
  /// Throws PreconditionError when unbounded.
  double sup_bound() const;
  std::optional<double> maybe_sup_bound() const { return sup_bound_; }
  const std::string& label() const { return label_; }
  ObservableKind kind() const { return kind_; }
  const ObservableParams& params() const { return params_; }
  /// Values lie in {0, 1}.
  bool is_indicator() const { return indicator_; }
  /// Radius r such that the observable vanishes off sites [-r, r] of the
  /// translation line; empty when no compact support is declared.
  std::optional<std::int64_t> support_radius() const { return support_radius_; }

  Observable with_indicator(bool v) const;
  Observable with_support_radius(std::int64_t r) const;

 private:
  Evaluator eval_;
  std::optional<double> sup_bound_;
  std::string label_;
  ObservableKind kind_;
  ObservableParams params_;
  bool indicator_ = false;
  std::optional<std::int64_t> support_radius_;
};

namespace observables {

Observable constant(double c);
Observable cosine(int k, std::size_t coordinate = 0);
Observable sine(int k, std::size_t coordinate = 0);
Observable arc(double a, std::size_t coordinate = 0);
/// Coordinate w(e) of a shift configuration; the first shift factor of a
/// product point.
Observable cylinder(ActionPtr shift);
Observable component(int j);
/// x^{-1/2} on the first real coordinate; flagged unbounded.
Observable inverse_sqrt();
Observable tent(std::int64_t half_width);
Observable site(std::int64_t s);

Observable sum(const Observable& a, const Observable& b);
Observable scale(double c, const Observable& a);
Observable product(const Observable& a, const Observable& b);
/// x -> phi(T_h x).
Observable compose(const Observable& phi, ActionPtr action, const Element& h);

/// Parses one term ("const:c=3.5", "cos:k=1,coord=0", "sin:k=2", "arc:a=0.3",
/// "cylinder", "component:j=1", "invsqrt", "tent:w=5", "site:s=0") or a sum
/// of products of terms joined by " + " and " * ".
/// `action` is needed by "cylinder".
Observable parse(std::string_view spec, const ActionPtr& action);

/// Constants, cos/sin(2 pi k x) for k <= max_frequency, dyadic arcs and
/// component indicators, as applicable to the action's phase space.
std::vector<Observable> default_dictionary(const ActionPtr& action, int max_frequency = 5);

}  // namespace observables

/// Closed-form integral against the canonical invariant measure, when known.
std::optional<double> exact_integral(const Action& action, const Observable& phi);

}  // namespace folnerlab

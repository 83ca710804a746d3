#pragma once

// Concrete Borel G-spaces: phase spaces, measure-preserving actions of the
// discrete groups in group.hpp, and samplers for their invariant measures.

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "folnerlab/group.hpp"

namespace folnerlab {

struct Point;

struct CirclePoint {
  double x = 0.0;
};
struct TorusPoint {
  std::vector<double> x;
};
/// Configuration w_t(h) = w_seed(h t) of a Bernoulli shift, materialised lazily.
struct ShiftPoint {
  std::uint64_t seed = 0;
  Element translate;
};
struct TwoCirclePoint {
  int component = 0;
  double x = 0.0;
};
/// A site of Z, for the translation action of Z on itself.
struct LinePoint {
  std::int64_t site = 0;
};
struct ProductPoint {
  std::vector<Point> parts;
};

struct Point {
  std::variant<CirclePoint, TorusPoint, ShiftPoint, TwoCirclePoint, LinePoint, ProductPoint> value;

  Point() = default;
  template <class T>
  Point(T v) : value(std::move(v)) {}  // NOLINT(google-explicit-constructor)

  template <class T>
  const T& as() const { return std::get<T>(value); }
  template <class T>
  bool is() const { return std::holds_alternative<T>(value); }
};

std::string to_string(const Point& p);
/// Coordinate-wise comparison: reals on circles up to `tol` (mod 1),
/// integer and symbolic data exactly.
bool points_close(const Point& a, const Point& b, double tol);
/// i-th real coordinate, flattened across products. Throws ConfigError
/// when the point has no such coordinate.
double real_coordinate(const Point& p, std::size_t i);

/// x + t*alpha reduced to [0, 1), with the product error of t*alpha folded
/// back in so the result is accurate for |t| up to 2^53.
double rotate(double x, std::int64_t t, double alpha);
/// frac(x) in [0, 1).
double wrap_unit(double x);
/// Circle distance min(|x-y|, 1-|x-y|).
double circle_distance(double x, double y);
/// Fair bit w_seed(h) of the Bernoulli configuration named by `seed`.
int shift_bit(std::uint64_t seed, const Element& h);

enum class PhaseSpace { circle, torus, shift, two_circle, line, product };

/// Seeded generator shared by samplers: splitmix-keyed Mersenne Twister,
/// one independent stream per (seed, stream) pair.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream = 0);
  std::uint64_t next() { return engine_(); }
  /// Uniform double in [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

/// A measure-preserving action T of a discrete group on a phase space.
/// Implementations satisfy T_e x = x and T_g T_h x = T_{gh} x.
class Action {
 public:
  explicit Action(GroupDescriptor group) : group_(std::move(group)) {}
  virtual ~Action() = default;

  const GroupDescriptor& group() const { return group_; }
  virtual PhaseSpace phase_space() const = 0;
  virtual Point apply(const Element& g, const Point& x) const = 0;
  virtual std::string describe() const = 0;

  /// Metric on the phase space, when one is available.
  virtual std::optional<double> distance(const Point& x, const Point& y) const;
  virtual std::optional<double> diameter() const { return std::nullopt; }
  virtual bool compact() const { return true; }
  /// Draw a point from the canonical invariant probability measure.
  /// Throws PreconditionError when the system carries none.
  virtual Point sample_point(Rng& rng) const = 0;
  /// Canonical starting point used when an experiment names none.
  virtual Point default_point() const = 0;
  /// Rejects points of the wrong kind with ConfigError.
  virtual void check_point(const Point& x) const = 0;

 private:
  GroupDescriptor group_;
};

using ActionPtr = std::shared_ptr<const Action>;

/// Z acting on the circle by x -> x + n*alpha.
class RotationAction final : public Action {
 public:
  explicit RotationAction(double alpha);
  double alpha() const { return alpha_; }
  PhaseSpace phase_space() const override { return PhaseSpace::circle; }
  Point apply(const Element& g, const Point& x) const override;
  std::string describe() const override;
  std::optional<double> distance(const Point& x, const Point& y) const override;
  std::optional<double> diameter() const override { return 0.5; }
  Point sample_point(Rng& rng) const override;
  Point default_point() const override { return CirclePoint{0.0}; }
  void check_point(const Point& x) const override;

 private:
  double alpha_;
};

/// Z^m acting on the d-torus: g moves x by sum_j g_j * alpha_j, where
/// alpha_j is the j-th rotation vector.
class TorusAction final : public Action {
 public:
  TorusAction(GroupDescriptor group, std::vector<std::vector<double>> rotation_vectors);
  std::size_t dimension() const { return dim_; }
  const std::vector<std::vector<double>>& rotation_vectors() const { return alphas_; }
  PhaseSpace phase_space() const override { return PhaseSpace::torus; }
  Point apply(const Element& g, const Point& x) const override;
  std::string describe() const override;
  std::optional<double> distance(const Point& x, const Point& y) const override;
  std::optional<double> diameter() const override { return 0.5; }
  Point sample_point(Rng& rng) const override;
  Point default_point() const override;
  void check_point(const Point& x) const override;

 private:
  std::size_t dim_;
  std::vector<std::vector<double>> alphas_;
};

/// Bernoulli(1/2) shift over G with (T_g w)(h) = w(h g). A point (seed, t)
/// names w_t(h) = w_seed(h t), so T_g (seed, t) = (seed, g t).
class ShiftAction final : public Action {
 public:
  ShiftAction(GroupDescriptor group, std::uint64_t seed, int metric_radius = 20);
  std::uint64_t seed() const { return seed_; }
  int metric_radius() const { return k_max_; }
  PhaseSpace phase_space() const override { return PhaseSpace::shift; }
  Point apply(const Element& g, const Point& x) const override;
  std::string describe() const override;
  /// Truncated cylinder metric 2^{-k}, k the smallest sup-norm radius of a
  /// coordinate where the configurations differ; 0 if they agree up to k_max.
  std::optional<double> distance(const Point& x, const Point& y) const override;
  std::optional<double> diameter() const override { return 1.0; }
  Point sample_point(Rng& rng) const override;
  Point default_point() const override;
  void check_point(const Point& x) const override;
  /// w_x(h) for the configuration named by x.
  int coordinate(const Point& x, const Element& h) const;

 private:
  std::uint64_t seed_;
  int k_max_;
};

/// Disjoint union of two circles, each rotated by its own number, with the
/// invariant measure giving weight 1/2 to each component. Not ergodic.
class TwoCircleAction final : public Action {
 public:
  TwoCircleAction(double alpha0, double alpha1);
  double alpha(int component) const { return component == 0 ? alpha0_ : alpha1_; }
  PhaseSpace phase_space() const override { return PhaseSpace::two_circle; }
  Point apply(const Element& g, const Point& x) const override;
  std::string describe() const override;
  /// Circle distance within a component, 1 across components.
  std::optional<double> distance(const Point& x, const Point& y) const override;
  std::optional<double> diameter() const override { return 1.0; }
  Point sample_point(Rng& rng) const override;
  Point default_point() const override { return TwoCirclePoint{0, 0.0}; }
  void check_point(const Point& x) const override;

 private:
  double alpha0_, alpha1_;
};

/// Z acting on Z by translation; dissipative, no invariant probability.
class TranslationLineAction final : public Action {
 public:
  TranslationLineAction();
  PhaseSpace phase_space() const override { return PhaseSpace::line; }
  Point apply(const Element& g, const Point& x) const override;
  std::string describe() const override { return "line"; }
  std::optional<double> distance(const Point& x, const Point& y) const override;
  bool compact() const override { return false; }
  Point sample_point(Rng& rng) const override;
  Point default_point() const override { return LinePoint{0}; }
  void check_point(const Point& x) const override;
};

/// Factor-wise action of G_1 x ... x G_l on X_1 x ... x X_l.
class ProductAction final : public Action {
 public:
  explicit ProductAction(std::vector<ActionPtr> factors);
  const std::vector<ActionPtr>& factors() const { return factors_; }
  PhaseSpace phase_space() const override { return PhaseSpace::product; }
  Point apply(const Element& g, const Point& x) const override;
  std::string describe() const override;
  /// Max of the factor distances.
  std::optional<double> distance(const Point& x, const Point& y) const override;
  std::optional<double> diameter() const override;
  bool compact() const override;
  Point sample_point(Rng& rng) const override;
  Point default_point() const override;
  void check_point(const Point& x) const override;

 private:
  std::vector<ActionPtr> factors_;
};

/// Parses "rotation:alpha=0.6180339887", "torus:alpha=[a1,a2]" (Z acting
/// diagonally), "torus:alpha=[a1,a2],G=Z^2" (coordinate-wise), "shift:G=Z,seed=42",
/// "twocircle:a0=...,a1=...", "line", and "product(spec;spec;...)".
ActionPtr parse_action(std::string_view spec);

/// Seeded sampler of the invariant measure of an action.
class MeasureSampler {
 public:
  explicit MeasureSampler(ActionPtr action) : action_(std::move(action)) {}
  const Action& action() const { return *action_; }
  /// `count` points, deterministic in (seed, stream).
  std::vector<Point> sample(std::size_t count, std::uint64_t seed, std::uint64_t stream = 0) const;

 private:
  ActionPtr action_;
};

}  // namespace folnerlab

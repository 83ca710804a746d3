#include <catch_amalgamated.hpp>

#include <cmath>

#include "folnerlab/error.hpp"
#include "folnerlab/recurrence.hpp"
#include "oracles.hpp"

using namespace folnerlab;
using Catch::Matchers::WithinAbs;

namespace {

const double kGolden = (std::sqrt(5.0) - 1.0) / 2.0;

// Circle rotation that hides its metric.
class BareRotation final : public Action {
 public:
  BareRotation() : Action(GroupDescriptor::integers()), inner_(kGolden) {}
  PhaseSpace phase_space() const override { return PhaseSpace::circle; }
  Point apply(const Element& g, const Point& x) const override { return inner_.apply(g, x); }
  std::string describe() const override { return "bare rotation"; }
  Point sample_point(Rng& rng) const override { return inner_.sample_point(rng); }
  Point default_point() const override { return inner_.default_point(); }
  void check_point(const Point& x) const override { inner_.check_point(x); }

 private:
  RotationAction inner_;
};

}  // namespace

TEST_CASE("exact correlations on the circle", "[recurrence]") {
  const RotationAction rot(0.3);
  const auto& Z = rot.group();
  for (std::int64_t t : {0, 1, 2, 5, 17}) {
    const auto g = Z.element({t});
    const double theta = wrap_unit(0.3 * static_cast<double>(t));
    const auto arc = observables::arc(0.4);
    const double ref = oracle::quadrature([&](double x) { return arc(CirclePoint{x}) * arc(CirclePoint{wrap_unit(x + theta)}); });
    CHECK_THAT(*exact_correlation(rot, arc, g), WithinAbs(ref, 1e-4));
    const auto c = observables::cosine(2);
    const double refc = oracle::quadrature([&](double x) { return c(CirclePoint{x}) * c(CirclePoint{wrap_unit(x + theta)}); });
    CHECK_THAT(*exact_correlation(rot, c, g), WithinAbs(refc, 1e-9));
  }
  CHECK(*exact_correlation(rot, observables::constant(3.0), Z.element({4})) == 9.0);
  CHECK_FALSE(exact_correlation(rot, observables::tent(2), Z.element({1})).has_value());
}

TEST_CASE("Khintchine densities", "[recurrence]") {
  const auto rot = std::make_shared<RotationAction>(kGolden);
  const MeasureSampler sampler(rot);
  const std::vector<std::size_t> idx{100, 1000, 10000};
  const auto one = khintchine_density(*rot, observables::constant(1.0), families::intervals(), idx, sampler, {});
  for (const auto& d : one) CHECK(d.ratio == 1.0);

  const double a = 0.3;
  const auto arc = observables::arc(a);
  double prev = 0.0;
  for (double eps : {0.005, 0.01, 0.02, 0.05}) {
    KhintchineOptions opt;
    opt.epsilon = eps;
    const auto d = khintchine_density(*rot, arc, families::intervals(), idx, sampler, opt);
    CHECK(d.back().ratio >= prev);
    CHECK_THAT(d.back().ratio, WithinAbs(oracle::khintchine_arc_density(a, eps), 2e-3));
    CHECK(d.back().lower_envelope <= d.back().ratio);
    CHECK(d.back().upper_envelope >= d.back().ratio);
    prev = d.back().ratio;
  }

  KhintchineOptions bad;
  bad.epsilon = 0.0;
  CHECK_THROWS_AS(khintchine_density(*rot, arc, families::intervals(), idx, sampler, bad), ConfigError);
  CHECK_THROWS_AS(khintchine_density(*rot, observables::cosine(1), families::intervals(), idx, sampler, {}),
                  PreconditionError);
  CHECK_THROWS_AS(khintchine_density(*rot, observables::constant(0.0), families::intervals(), idx, sampler, {}),
                  PreconditionError);
}

TEST_CASE("Monte Carlo correlation on the shift", "[recurrence]") {
  const auto shift = std::make_shared<ShiftAction>(GroupDescriptor::integers(), 3);
  const MeasureSampler sampler(shift);
  const auto phi = observables::cylinder(shift);
  const auto& Z = shift->group();
  CHECK_THAT(correlation(*shift, phi, Z.identity(), sampler, 20000, 1), WithinAbs(0.5, 0.02));
  CHECK_THAT(correlation(*shift, phi, Z.element({4}), sampler, 20000, 1), WithinAbs(0.25, 0.02));
  CHECK(correlation(*shift, phi, Z.element({4}), sampler, 500, 9) ==
        correlation(*shift, phi, Z.element({4}), sampler, 500, 9));
}

TEST_CASE("visit and return densities", "[recurrence]") {
  const TranslationLineAction line;
  const std::vector<std::size_t> idx{1, 10, 100, 1000};
  const auto v = visit_density(line, LinePoint{0}, observables::site(0), families::intervals(), idx);
  for (const auto& d : v) {
    CHECK(d.hits == 1);
    CHECK(d.ratio == 1.0 / static_cast<double>(d.n));
  }
  CHECK(v.back().lower_envelope == 1e-3);
  CHECK(v.back().upper_envelope == 1.0);
  CHECK_THROWS_AS(visit_density(line, LinePoint{0}, observables::tent(3), families::intervals(), idx),
                  PreconditionError);

  const RotationAction rot(kGolden);
  const auto q = qwap_density(rot, CirclePoint{0.2}, 0.5 + 1e-9, families::intervals(), idx);
  for (const auto& d : q) CHECK(d.ratio == 1.0);
  const auto small = qwap_density(rot, CirclePoint{0.2}, 0.05, families::intervals(), std::vector<std::size_t>{10000});
  CHECK_THAT(small.back().ratio, WithinAbs(0.1, 2e-3));
  CHECK_THROWS_AS(qwap_density(BareRotation(), CirclePoint{0.2}, 0.1, families::intervals(), idx), MetricUnavailable);
  CHECK_THROWS_AS(qwap_density(rot, CirclePoint{0.2}, 0.0, families::intervals(), idx), ConfigError);
}

TEST_CASE("dissipativity probe", "[recurrence]") {
  const TranslationLineAction line;
  const std::vector<std::size_t> idx{10, 100, 1000};
  const auto p = dissipativity_probe(line, observables::tent(5), LinePoint{0}, families::intervals(), idx);
  REQUIRE(p.bounds.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(std::fabs(p.trace.points[i].value) <= p.bounds[i] + 1e-15);
    CHECK_THAT(p.bounds[i], WithinAbs(11.0 / static_cast<double>(idx[i]), 1e-15));
  }
  CHECK_THROWS_AS(dissipativity_probe(line, observables::constant(1.0), LinePoint{0}, families::intervals(), idx),
                  PreconditionError);
  const auto zero = dissipativity_probe(line, observables::constant(0.0), LinePoint{0}, families::intervals(), idx);
  CHECK(zero.trace.points.back().value == 0.0);
}

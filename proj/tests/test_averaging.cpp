#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "folnerlab/averaging.hpp"
#include "folnerlab/error.hpp"
#include "folnerlab/reduce.hpp"
#include "oracles.hpp"

using namespace folnerlab;
using Catch::Matchers::WithinAbs;

namespace {

const double kGolden = (std::sqrt(5.0) - 1.0) / 2.0;

}  // namespace

TEST_CASE("trivial averages", "[averaging]") {
  const RotationAction rot(kGolden);
  const auto& Z = rot.group();
  CHECK(ergodic_average(rot, interval(0, 37), observables::constant(2.5), CirclePoint{0.4}) == 2.5);
  const auto single = FiniteSubset(Z, std::vector<Element>{Z.identity()});
  CHECK(ergodic_average(rot, single, observables::cosine(1), CirclePoint{0.1}) ==
        std::cos(2.0 * std::numbers::pi * 0.1));
  CHECK_THROWS_AS(ergodic_average(rot, FiniteSubset(Z), observables::cosine(1), CirclePoint{0.0}), EmptySetError);
  CHECK_THROWS_AS(ergodic_average(rot, interval(0, 5), observables::inverse_sqrt(), CirclePoint{0.3}),
                  PreconditionError);
  CHECK_NOTHROW(ergodic_average(rot, interval(0, 5), observables::inverse_sqrt(), CirclePoint{0.3}, true));
}

TEST_CASE("Dirichlet closed form and envelope", "[averaging]") {
  const RotationAction rot(kGolden);
  for (std::int64_t n : {10, 100, 1000, 10000}) {
    const double v = ergodic_average(rot, interval(0, n), observables::cosine(1), CirclePoint{0.0});
    CHECK_THAT(v, WithinAbs(oracle::dirichlet_cos(0.0, kGolden, n), 1e-12));
    CHECK(std::fabs(v) <= 1.0 / (static_cast<double>(n) * std::sin(std::numbers::pi * kGolden)));
  }
}

TEST_CASE("linearity and continuity in the observable", "[averaging]") {
  const auto rot = std::make_shared<RotationAction>(kGolden);
  const auto F = interval(-40, 300);
  const Point x = CirclePoint{0.23};
  const auto phi = observables::cosine(2);
  const auto psi = observables::arc(0.4);
  const double combo = ergodic_average(*rot, F, observables::sum(observables::scale(3.0, phi), psi), x);
  const double parts = 3.0 * ergodic_average(*rot, F, phi, x) + ergodic_average(*rot, F, psi, x);
  CHECK_THAT(combo, WithinAbs(parts, 1e-12));
  const auto near = observables::sum(phi, observables::constant(0.01));
  CHECK(std::fabs(ergodic_average(*rot, F, near, x) - ergodic_average(*rot, F, phi, x)) <= 0.01 + 1e-15);
}

TEST_CASE("traces", "[averaging]") {
  const RotationAction rot(kGolden);
  const std::vector<std::size_t> idx{100, 1000, 10000};
  const auto t = average_trace(rot, families::intervals(), observables::constant(1.0), CirclePoint{0.0}, idx);
  CHECK(t.points.size() == 3);
  for (const auto& p : t.points) {
    CHECK(p.value == 1.0);
    CHECK(p.oscillation == 0.0);
  }
  const std::vector<std::size_t> bad{10, 10};
  CHECK_THROWS_AS(average_trace(rot, families::intervals(), observables::cosine(1), CirclePoint{0.0}, bad),
                  ConfigError);
}

TEST_CASE("Bernoulli shift averages concentrate", "[averaging]") {
  const std::size_t n = 400;
  int inside = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto shift = std::make_shared<ShiftAction>(GroupDescriptor::integers(), seed);
    const double v =
        ergodic_average(*shift, interval(0, n), observables::cylinder(shift), ShiftPoint{seed, shift->group().identity()});
    if (std::fabs(v - 0.5) <= 4.0 / std::sqrt(static_cast<double>(n))) ++inside;
  }
  CHECK(inside >= 95);
}

TEST_CASE("translation identity and perturbation bound", "[averaging]") {
  const auto rot = std::make_shared<RotationAction>(kGolden);
  const auto& Z = rot->group();
  const auto F = interval(0, 50);
  const auto check = translation_identity_check(rot, F, observables::cosine(1), CirclePoint{0.0}, Z.element({7}));
  CHECK(check.diff <= 1e-12);
  CHECK(translation_identity_check(rot, F, observables::cosine(1), CirclePoint{0.0}, Z.identity()).diff == 0.0);

  const auto shift = std::make_shared<ShiftAction>(GroupDescriptor::heisenberg(), 5);
  const auto& H = shift->group();
  const std::int64_t lo[3] = {-2, -2, -3}, hi[3] = {3, 3, 4};
  const auto B = coordinate_box(H, lo, hi);
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<std::int64_t> c(-9, 9);
  for (int i = 0; i < 20; ++i) {
    const auto h = H.element({c(rng), c(rng), c(rng)});
    const auto r = translation_identity_check(shift, B, observables::cylinder(shift), ShiftPoint{3, H.identity()}, h);
    CHECK(r.diff <= 1e-12);
  }

  const auto C = set_union(interval(0, 100), interval(200, 210));
  const auto p = perturbation_bound_check(*rot, interval(0, 100), C, observables::cosine(1), CirclePoint{0.0});
  CHECK(p.symmetric_difference == 10);
  CHECK_THAT(p.bound, WithinAbs(0.2, 1e-15));
  CHECK(p.lhs <= p.bound + 1e-12);
  CHECK(perturbation_bound_check(*rot, F, F, observables::cosine(1), CirclePoint{0.0}).lhs == 0.0);
}

TEST_CASE("multiple averages", "[averaging]") {
  const auto rot = std::make_shared<RotationAction>(kGolden);
  const auto& Z = rot->group();
  const auto K = interval(0, 100000);
  const std::vector<Element> one{Z.element({3})};
  std::vector<Element> multiples;
  for (std::int64_t t = 0; t < 500; ++t) multiples.push_back(Z.element({3 * t}));
  const double direct = ergodic_average(*rot, FiniteSubset(Z, multiples), observables::cosine(1), CirclePoint{0.1});
  CHECK_THAT(multiple_average(*rot, one, interval(0, 500), observables::cosine(1), CirclePoint{0.1}),
             WithinAbs(direct, 1e-12));
  const std::vector<Element> pair{Z.element({1}), Z.element({2})};
  CHECK_THAT(multiple_average(*rot, pair, K, observables::cosine(1), CirclePoint{0.0}), WithinAbs(0.0, 1e-2));
  const auto shifted = observables::parse("const:c=1 + cos", rot);
  CHECK_THAT(multiple_average(*rot, pair, K, shifted, CirclePoint{0.0}), WithinAbs(1.0, 1e-2));
  const auto h3 = std::make_shared<ShiftAction>(GroupDescriptor::heisenberg(), 1);
  const std::vector<Element> hg{h3->group().element({1, 0, 0})};
  CHECK_THROWS_AS(multiple_average(*h3, hg, K, observables::cylinder(h3), h3->default_point()), PreconditionError);
}

TEST_CASE("iterated product averages", "[averaging]") {
  const std::vector<ActionPtr> torus{parse_action("torus:alpha=[0.6180339887498949,0]"),
                                     parse_action("torus:alpha=[0,0.41421356237309503]")};
  const std::vector<FolnerSequence> seqs{families::intervals(), families::intervals()};
  const auto phi = observables::parse("cos:coord=0 * cos:coord=1", torus[0]);
  const double v = iterated_product_average(torus, seqs, phi, TorusPoint{{0.1, 0.2}}, 300);
  CHECK_THAT(v, WithinAbs(oracle::dirichlet_cos(0.1, 0.6180339887498949, 300) *
                              oracle::dirichlet_cos(0.2, 0.41421356237309503, 300),
                          1e-12));
  CHECK(iterated_product_average(torus, seqs, observables::constant(0.7), TorusPoint{{0.1, 0.2}}, 20) == 0.7);

  // Same rotation twice: a double sum of cos(2 pi (x + (s + t) alpha)).
  const std::vector<ActionPtr> same{parse_action("rotation:alpha=0.6180339887498949"),
                                    parse_action("rotation:alpha=0.6180339887498949")};
  const std::size_t n = 200;
  const double w = iterated_product_average(same, seqs, observables::cosine(1), CirclePoint{0.3}, n);
  using C = std::complex<double>;
  const double tau = 2.0 * std::numbers::pi;
  C s(0.0, 0.0);
  for (std::size_t t = 0; t < n; ++t) s += std::polar(1.0, tau * 0.6180339887498949 * static_cast<double>(t));
  s /= static_cast<double>(n);
  CHECK_THAT(w, WithinAbs((std::polar(1.0, tau * 0.3) * s * s).real(), 1e-12));

  const std::vector<ActionPtr> clash{parse_action("rotation:alpha=0.1"), parse_action("twocircle:a0=0.1,a1=0.2")};
  CHECK_THROWS_AS(iterated_product_average(clash, seqs, observables::cosine(1), CirclePoint{0.0}, 5),
                  PreconditionError);
}

TEST_CASE("pairwise sums do not depend on the thread count", "[averaging]") {
  const RotationAction rot(kGolden);
  const auto F = interval(0, 50000);
  set_thread_count(1);
  const double one = ergodic_average(rot, F, observables::cosine(3), CirclePoint{0.2});
  set_thread_count(4);
  const double four = ergodic_average(rot, F, observables::cosine(3), CirclePoint{0.2});
  set_thread_count(1);
  CHECK(one == four);
}

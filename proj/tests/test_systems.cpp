#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "folnerlab/error.hpp"
#include "folnerlab/observable.hpp"
#include "folnerlab/systems.hpp"

using namespace folnerlab;
using Catch::Matchers::WithinAbs;

namespace {

Element random_element(const GroupDescriptor& G, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> c(-40, 40);
  std::vector<std::int64_t> v(G.rank());
  for (auto& x : v) x = c(rng);
  return G.element(v);
}

}  // namespace

TEST_CASE("every library system is a left action", "[systems]") {
  for (const char* spec : {"rotation:alpha=0.3819660112501051", "torus:alpha=[0.1,0.7]",
                           "torus:alpha=[0.25,0.3],G=Z^2", "shift:G=Z,seed=4", "shift:G=H3,seed=9",
                           "twocircle:a0=0.2,a1=0.7", "line", "product(rotation:alpha=0.4;line)"}) {
    const auto action = parse_action(spec);
    const auto& G = action->group();
    std::mt19937_64 rng(17);
    Rng sampler(3);
    for (int i = 0; i < 50; ++i) {
      const auto g = random_element(G, rng);
      const auto h = random_element(G, rng);
      const Point x = action->compact() ? action->sample_point(sampler) : action->default_point();
      INFO(spec << " g=" << to_string(g) << " h=" << to_string(h));
      CHECK(points_close(action->apply(G.identity(), x), x, 1e-12));
      CHECK(points_close(action->apply(g, action->apply(h, x)), action->apply(G.multiply(g, h), x), 1e-9));
    }
  }
}

TEST_CASE("rotation accuracy at large times", "[systems]") {
  const double alpha = std::sqrt(2.0) - 1.0;
  const double x = rotate(0.3, 10'000'000, alpha);
  long double exact = 0.3L + 10'000'000.0L * static_cast<long double>(alpha);
  exact -= std::floor(exact);
  CHECK_THAT(x, WithinAbs(static_cast<double>(exact), 1e-12));
  CHECK(wrap_unit(-0.25) == 0.75);
  CHECK_THAT(circle_distance(0.95, 0.05), WithinAbs(0.1, 1e-15));
}

TEST_CASE("shift metric and coordinates", "[systems]") {
  const auto action = std::make_shared<ShiftAction>(GroupDescriptor::integers(), 11, 20);
  const auto& Z = action->group();
  const Point x = ShiftPoint{5, Z.identity()};
  CHECK(*action->distance(x, x) == 0.0);
  const Point y = action->apply(Z.element({1}), x);
  CHECK(action->coordinate(y, Z.identity()) == action->coordinate(x, Z.element({1})));
  const Point z = ShiftPoint{6, Z.identity()};
  CHECK(*action->distance(x, z) > 0.0);
  CHECK(*action->distance(x, z) <= 1.0);
}

TEST_CASE("two-circle components are invariant", "[systems]") {
  const TwoCircleAction action(0.2, 0.7);
  const Point x = TwoCirclePoint{1, 0.3};
  const auto y = action.apply(action.group().element({5}), x);
  CHECK(y.as<TwoCirclePoint>().component == 1);
  CHECK_THAT(y.as<TwoCirclePoint>().x, WithinAbs(wrap_unit(0.3 + 3.5), 1e-12));
  CHECK(*action.distance(x, TwoCirclePoint{0, 0.3}) == 1.0);
  CHECK_THROWS_AS(action.check_point(TwoCirclePoint{2, 0.1}), Error);
}

TEST_CASE("sampling is deterministic and uniform", "[systems]") {
  const auto action = parse_action("rotation:alpha=0.5");
  const MeasureSampler sampler(action);
  const auto a = sampler.sample(10000, 42);
  const auto b = sampler.sample(10000, 42);
  double mean = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].as<CirclePoint>().x == b[i].as<CirclePoint>().x);
    mean += a[i].as<CirclePoint>().x;
  }
  CHECK_THAT(mean / 10000.0, WithinAbs(0.5, 0.015));
  CHECK_THROWS_AS(MeasureSampler(parse_action("line")).sample(1, 0), PreconditionError);
}

TEST_CASE("system and observable parsing", "[systems]") {
  CHECK_THROWS_AS(parse_action("rotation"), ConfigError);
  CHECK_THROWS_AS(parse_action("torus:alpha=[0.1],G=Z^2"), ConfigError);
  CHECK_THROWS_AS(parse_action("sphere"), ConfigError);
  const auto rot = parse_action("rotation:alpha=0.1");
  const auto phi = observables::parse("const:c=2 * cos + arc:a=0.5", rot);
  CHECK_THAT(phi(CirclePoint{0.0}), WithinAbs(3.0, 1e-15));
  CHECK(phi.sup_bound() == 3.0);
  CHECK_THROWS_AS(observables::parse("wave", rot), ConfigError);
  CHECK_FALSE(observables::inverse_sqrt().bounded());
  CHECK_THROWS_AS(observables::inverse_sqrt().sup_bound(), PreconditionError);
  CHECK(observables::arc(0.3).is_indicator());
  CHECK(*observables::tent(5).support_radius() == 5);
  CHECK(*exact_integral(*rot, observables::arc(0.3)) == 0.3);
}

#include <catch_amalgamated.hpp>

#include <cmath>

#include "folnerlab/averaging.hpp"
#include "folnerlab/decomposition.hpp"
#include "folnerlab/error.hpp"
#include "oracles.hpp"

using namespace folnerlab;
using Catch::Matchers::WithinAbs;

namespace {

std::size_t index_of(const std::vector<std::string>& labels, const std::string& label) {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return i;
  FAIL("missing label " << label);
  return 0;
}

}  // namespace

TEST_CASE("component estimates on two circles", "[decomposition]") {
  const auto action = std::make_shared<TwoCircleAction>(0.6180339887498949, 0.41421356237309503);
  const auto dict = observables::default_dictionary(action, 2);
  const std::size_t n = 4096;
  for (int j : {0, 1}) {
    const auto est = component_estimate(*action, families::intervals(), TwoCirclePoint{j, 0.3}, dict, n);
    CHECK(est.cardinality == n);
    CHECK(est.estimates[index_of(est.labels, "component:j=" + std::to_string(j))] == 1.0);
    CHECK(est.estimates[index_of(est.labels, "component:j=" + std::to_string(1 - j))] == 0.0);
    CHECK(est.estimates[index_of(est.labels, "const:c=1")] == 1.0);
    CHECK(std::fabs(est.estimates[index_of(est.labels, "cos:k=1")]) <= 0.01);
    for (double o : est.oscillation) CHECK(o <= 0.05);
  }
  CHECK_THROWS_AS(component_estimate(*action, families::intervals(), TwoCirclePoint{0, 0.3}, {}, n), ConfigError);
  CHECK_THROWS_AS(component_estimate(*action, families::intervals(), TwoCirclePoint{0, 0.3},
                                     {observables::inverse_sqrt()}, n),
                  PreconditionError);
}

TEST_CASE("orbit averages match single averages", "[decomposition]") {
  const auto rot = std::make_shared<RotationAction>(0.2718281828);
  const auto dict = observables::default_dictionary(rot, 3);
  const auto F = interval(-10, 700);
  const auto all = orbit_averages(*rot, F, CirclePoint{0.05}, dict);
  REQUIRE(all.size() == dict.size());
  for (std::size_t i = 0; i < dict.size(); ++i)
    CHECK_THAT(all[i], WithinAbs(ergodic_average(*rot, F, dict[i], CirclePoint{0.05}), 1e-12));
}

TEST_CASE("disintegration check", "[decomposition]") {
  const auto action = std::make_shared<TwoCircleAction>(0.6180339887498949, 0.41421356237309503);
  const MeasureSampler sampler(action);
  const auto dict = observables::default_dictionary(action, 2);
  const auto rows = disintegration_check(*action, families::intervals(), sampler, dict, 2000, 400, 7);
  REQUIRE(rows.size() == dict.size());
  for (const auto& r : rows) {
    INFO(r.label);
    if (r.label == "const:c=1") CHECK(r.diff == 0.0);
    CHECK(r.within_tolerance);
    if (r.exact) CHECK_THAT(r.rhs, WithinAbs(*r.exact, 0.1));
  }
  std::vector<std::string> labels;
  for (const auto& r : rows) labels.push_back(r.label);
  // Component indicators are invariant, so their averages are exact.
  CHECK(rows[index_of(labels, "component:j=0")].diff == 0.0);
  CHECK(rows[index_of(labels, "component:j=1")].diff == 0.0);
  CHECK_THROWS_AS(disintegration_check(*action, families::intervals(), sampler, dict, 100, 1, 7), ConfigError);
}

TEST_CASE("ergodicity score", "[decomposition]") {
  const auto action = std::make_shared<TwoCircleAction>(0.6180339887498949, 0.41421356237309503);
  const auto dict = observables::default_dictionary(action, 1);
  const std::vector<Point> single{TwoCirclePoint{0, 0.1}};
  CHECK(ergodicity_score(*action, families::intervals(), single, dict, 500).score == 0.0);
  const std::vector<Point> across{TwoCirclePoint{0, 0.1}, TwoCirclePoint{1, 0.1}};
  const auto s = ergodicity_score(*action, families::intervals(), across, dict, 500);
  CHECK_THAT(s.score, WithinAbs(0.5, 1e-15));
  const std::vector<Point> within{TwoCirclePoint{0, 0.1}, TwoCirclePoint{0, 0.6}, TwoCirclePoint{0, 0.8}};
  CHECK(ergodicity_score(*action, families::intervals(), within, dict, 4000).score <= 0.01);
  CHECK_THROWS_AS(ergodicity_score(*action, families::intervals(), {}, dict, 10), PreconditionError);
}

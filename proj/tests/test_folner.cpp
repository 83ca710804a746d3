#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "folnerlab/error.hpp"
#include "folnerlab/folner.hpp"
#include "oracles.hpp"

using namespace folnerlab;

TEST_CASE("boundary ratios of intervals and boxes are exact", "[folner]") {
  const auto Z = GroupDescriptor::integers();
  CHECK(boundary_ratio(interval(0, 10), Z.element({1})) == Ratio(1, 5));
  CHECK(boundary_ratio(interval(0, 10), Z.element({3})) == Ratio(3, 5));
  CHECK(boundary_ratio(interval(0, 10), Z.element({20})) == Ratio(2));
  CHECK(boundary_ratio(interval(0, 10), Z.identity()) == Ratio(0));
  const auto boxes = families::boxes(2);
  const auto& G = boxes.group();
  CHECK(boundary_ratio(boxes.at(8), G.element({1, 0})) == Ratio(1, 4));
  CHECK(boundary_ratio(boxes.at(8), G.element({1, 1})) == Ratio(15, 32));
  CHECK_THROWS_AS(boundary_ratio(FiniteSubset(Z), Z.element({1})), EmptySetError);
}

TEST_CASE("Heisenberg boxes are Følner", "[folner]") {
  const auto seq = families::heisenberg_boxes();
  CHECK(seq.at(2).size() == 16);
  const auto& H = seq.group();
  Ratio prev(3);
  for (std::size_t n : {4, 8, 16}) {
    const auto F = seq.at(n);
    Ratio worst(0);
    for (const auto& g : H.generators()) {
      worst = std::max(worst, boundary_ratio(F, g));
      worst = std::max(worst, boundary_ratio(F, H.inverse(g)));
    }
    CHECK(worst < prev);
    prev = worst;
  }
}

TEST_CASE("Tempelman and Shulman ratios", "[folner]") {
  const auto djr = families::djr();
  for (std::int64_t n = 1; n <= 20; ++n)
    CHECK(tempelman_ratio(djr.at(static_cast<std::size_t>(n))) == Ratio(2 * n + 1, n + 1));
  const auto cr = condition_ratios(djr, 5);
  CHECK(cr.tempelman == Ratio(11, 6));
  CHECK(cr.shulman == Ratio(25, 6));
  for (std::int64_t n = 2; n <= 12; ++n) {
    const auto r = condition_ratios(djr, static_cast<std::size_t>(n)).shulman;
    CHECK(r == Ratio(static_cast<std::int64_t>(oracle::djr_shulman_union(n)), n + 1));
  }
  CHECK(condition_ratios(djr, 1).shulman == Ratio(0));
  CHECK(condition_ratios(families::intervals(), 7).shulman == Ratio(12, 7));
  CHECK_THROWS_AS(condition_ratios(djr, 30, 10), BudgetExceeded);
}

TEST_CASE("summing-prefix report", "[folner]") {
  const auto Z = GroupDescriptor::integers();
  const auto probes = FiniteSubset(Z, Z.generators());
  const auto intervals = is_summing_prefix(families::intervals(), 50, probes);
  CHECK(intervals.nested);
  CHECK(intervals.max_uniform_ratio == Ratio(1, 25));
  CHECK_FALSE(is_summing_prefix(families::djr(), 5, probes).nested);
}

TEST_CASE("family parsing validates the group", "[folner]") {
  const auto Z = GroupDescriptor::integers();
  CHECK(make_family("intervals", Z).at(5).size() == 5);
  CHECK(make_family("boxes:d=3", GroupDescriptor::lattice(3)).at(4).size() == 64);
  CHECK(make_family("djr", Z).at(3).size() == 4);
  CHECK(make_family("h3boxes", GroupDescriptor::heisenberg()).at(2).size() == 16);
  const auto prod = make_family("product(intervals;boxes:d=2)", GroupDescriptor::parse("Z x Z^2"));
  CHECK(prod.at(3).size() == 27);
  CHECK_THROWS_AS(make_family("boxes:d=2", Z), ConfigError);
  CHECK_THROWS_AS(make_family("h3boxes", Z), ConfigError);
  CHECK_THROWS_AS(make_family("spheres", Z), ConfigError);
}

TEST_CASE("perturbations", "[folner]") {
  const auto Z = GroupDescriptor::integers();
  const auto p = make_family("perturb(base=intervals,d=tail-sqrt)", Z);
  CHECK(p.family() == FamilyTag::perturbed);
  CHECK(p.at(100).size() == 111);
  CHECK(symmetric_difference_size(p.at(100), interval(0, 100)) == 11);
  const auto origin = make_family("perturb(base=intervals,d=origin)", Z);
  CHECK(origin.at(4).size() == 3);
  CHECK_THROWS_AS(origin.at(1), DegeneratePerturbation);
}

TEST_CASE("adversarial divergence sequence", "[folner]") {
  const auto action = std::make_shared<RotationAction>(std::sqrt(2.0) - 1.0);
  const auto phi = observables::inverse_sqrt();
  const auto seq = adversarial_divergence_sequence(action, phi, CirclePoint{0.3}, 10'000'000);
  CHECK(seq.at(5).size() == 6);
  CHECK(seq.at(5).row(5)[0] == 190);
  CHECK(seq.at(40).row(40)[0] == 1959952);
  CHECK(seq.at(45).row(45)[0] == 4704162);
  CHECK(seq.at(50).row(50)[0] == 4704162);
  const auto& Z = action->group();
  CHECK(boundary_ratio(seq.at(50), Z.element({1})) <= Ratio(4, 51));

  const auto short_seq = adversarial_divergence_sequence(action, phi, CirclePoint{0.3}, 1000);
  CHECK_THROWS_AS(short_seq.at(20), SearchExhausted);
  CHECK_THROWS_AS(adversarial_divergence_sequence(action, observables::cosine(1), CirclePoint{0.3}, 100),
                  PreconditionError);
}

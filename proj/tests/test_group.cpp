#include <catch_amalgamated.hpp>

#include <random>

#include "folnerlab/error.hpp"
#include "folnerlab/group.hpp"
#include "oracles.hpp"

using namespace folnerlab;

namespace {

oracle::Tuple tuple(const Element& g) { return {g.view().begin(), g.view().end()}; }

}  // namespace

TEST_CASE("identity is neutral and inverses cancel", "[group]") {
  for (const auto& G : {GroupDescriptor::integers(), GroupDescriptor::lattice(3), GroupDescriptor::heisenberg(),
                        GroupDescriptor::parse("Z x H3")}) {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<std::int64_t> c(-50, 50);
    for (int i = 0; i < 200; ++i) {
      std::vector<std::int64_t> v(G.rank());
      for (auto& x : v) x = c(rng);
      const auto g = G.element(v);
      CHECK(G.multiply(g, G.identity()) == g);
      CHECK(G.multiply(G.identity(), g) == g);
      CHECK(G.multiply(g, G.inverse(g)) == G.identity());
      CHECK(G.multiply(G.inverse(g), g) == G.identity());
    }
  }
}

TEST_CASE("Heisenberg law matches the reference product", "[group]") {
  const auto H = GroupDescriptor::heisenberg();
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<std::int64_t> c(-30, 30);
  for (int i = 0; i < 500; ++i) {
    const auto g = H.element({c(rng), c(rng), c(rng)});
    const auto h = H.element({c(rng), c(rng), c(rng)});
    const auto k = H.element({c(rng), c(rng), c(rng)});
    CHECK(tuple(H.multiply(g, h)) == oracle::mul(oracle::Law::heisenberg, tuple(g), tuple(h)));
    CHECK(tuple(H.inverse(g)) == oracle::inv(oracle::Law::heisenberg, tuple(g)));
    CHECK(H.multiply(H.multiply(g, h), k) == H.multiply(g, H.multiply(h, k)));
  }
  const auto x = H.element({1, 0, 0});
  const auto y = H.element({0, 1, 0});
  CHECK_FALSE(H.multiply(x, y) == H.multiply(y, x));
  CHECK_FALSE(H.is_abelian());
  CHECK_FALSE(H.is_z_module());
}

TEST_CASE("parsing group names", "[group]") {
  CHECK(GroupDescriptor::parse("Z") == GroupDescriptor::integers());
  CHECK(GroupDescriptor::parse("Z^2") == GroupDescriptor::lattice(2));
  CHECK(GroupDescriptor::parse("H3") == GroupDescriptor::heisenberg());
  const auto P = GroupDescriptor::parse("Z x Z^2");
  CHECK(P.kind() == GroupKind::product);
  CHECK(P.rank() == 3);
  CHECK(P.is_abelian());
  CHECK_THROWS_AS(GroupDescriptor::parse("Q"), ConfigError);
  CHECK_THROWS_AS(GroupDescriptor::parse("Z^x"), ConfigError);
}

TEST_CASE("elements of different groups do not mix", "[group]") {
  const auto Z = GroupDescriptor::integers();
  const auto Z2 = GroupDescriptor::lattice(2);
  CHECK_THROWS_AS(Z.multiply(Z.element({1}), Z2.element({1, 2})), DescriptorMismatch);
  CHECK_THROWS_AS(Z2.element({1}), DescriptorMismatch);
}

TEST_CASE("scalar multiples and generators", "[group]") {
  const auto Z3 = GroupDescriptor::lattice(3);
  CHECK(Z3.scalar_multiple(4, Z3.element({1, -2, 3})) == Z3.element({4, -8, 12}));
  CHECK(Z3.generators().size() == 3);
  CHECK(GroupDescriptor::heisenberg().generators().size() == 2);
  const auto P = GroupDescriptor::parse("Z x H3");
  const auto g = P.element({5, 1, 2, 3});
  CHECK(P.factor_element(g, 0) == GroupDescriptor::integers().element({5}));
  CHECK(P.factor_element(g, 1) == GroupDescriptor::heisenberg().element({1, 2, 3}));
  const std::vector<Element> parts{P.factor_element(g, 0), P.factor_element(g, 1)};
  CHECK(P.join(parts) == g);
}

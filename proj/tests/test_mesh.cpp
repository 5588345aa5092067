#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "lagrange1d/mesh.hpp"
#include "test_util.hpp"

using namespace lagrange1d;

TEST_CASE("build_mesh derives widths and midpoints") {
  const auto m = build_mesh({0.0, 1.0, 2.0});
  CHECK(m.cells() == 2);
  CHECK(m.widths() == std::vector<double>{1.0, 1.0});
  CHECK(m.midpoints() == std::vector<double>{0.5, 1.5});

  const auto nonuniform = build_mesh({0.0, 1.0, 3.0});
  CHECK(nonuniform.widths() == std::vector<double>{1.0, 2.0});
}

TEST_CASE("build_mesh rejects bad input and names the index") {
  CHECK_THROWS_AS(build_mesh({0.0, 1.0, 1.0}), MeshError);
  CHECK_THROWS_WITH(build_mesh({0.0, 1.0, 1.0}), doctest::Contains("node 2"));
  CHECK_THROWS_AS(build_mesh({0.0, 1.0}), MeshError);
  CHECK_THROWS_AS(build_mesh({0.0, 2.0, 1.0, 3.0}), MeshError);
  CHECK_THROWS_AS(build_mesh({0.0, std::numeric_limits<double>::quiet_NaN(), 1.0}), MeshError);
}

TEST_CASE("uniform_mesh") {
  CHECK(uniform_mesh(0.0, 1.0, 2).s()[1] == 0.5);
  const auto m = uniform_mesh(0.0, 2.0, 4);
  for (double h : m.widths()) CHECK(h == 0.5);
  CHECK_THROWS_AS(uniform_mesh(1.0, 0.0, 2), MeshError);
  CHECK_THROWS_AS(uniform_mesh(0.0, 1.0, 1), MeshError);
}

TEST_CASE("nodal masses are halved at the ends and sum to the total mass") {
  const auto m = build_mesh({0.0, 1.0, 3.0, 4.0});
  CHECK(m.nodal_mass(0) == 0.5);
  CHECK(m.nodal_mass(1) == 1.5);
  CHECK(m.nodal_mass(2) == 1.5);
  CHECK(m.nodal_mass(3) == 0.5);
}

TEST_CASE("width sum and uniform reconstruction properties") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t cells = 2 + trial * 3;
    const auto m = testing::random_mesh(rng, cells);
    double sum = 0.0;
    for (double h : m.widths()) sum += h;
    const double total = m.s(cells) - m.s(0);
    CHECK(std::abs(sum - total) <=
          static_cast<double>(cells) * std::numeric_limits<double>::epsilon() * total);

    const auto u = uniform_mesh(-1.0, 3.0, cells);
    const std::vector<double> nodes(u.s().begin(), u.s().end());
    CHECK(build_mesh(nodes).widths() == u.widths());
  }
}

TEST_CASE("time layer helpers") {
  const TimeLayer tl(1.0, 0.5);
  CHECK(tl.t_next() == 1.5);
  CHECK(tl.t_mid() == 1.25);
  CHECK(tl.t_sq_mid() == doctest::Approx((1.0 + 2.25) / 2.0));
  CHECK_THROWS(TimeLayer(0.0, 0.0));
}

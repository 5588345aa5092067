#include <doctest.h>

#include <cmath>
#include <random>
#include <type_traits>

#include "lagrange1d/state.hpp"
#include "test_util.hpp"

using namespace lagrange1d;

// Nodal and cell fields must not be interchangeable.
static_assert(!std::is_convertible_v<NodalField, CellField>);
static_assert(!std::is_convertible_v<CellField, NodalField>);
static_assert(!std::is_invocable_v<decltype(&forward_s), const CellField&, const MassMesh&,
                                   std::size_t>);
static_assert(!std::is_invocable_v<decltype(&backward_s), const NodalField&, const MassMesh&,
                                   std::size_t>);

TEST_CASE("time_diff") {
  CHECK(time_diff(1.0, 1.0, 0.1) == 0.0);
  CHECK(time_diff(2.0, 3.0, 0.5) == 2.0);
  for (double tau : {0.1, 0.25, 2.0}) {
    CHECK(time_diff(0.0, tau * 3.5, tau) == doctest::Approx(3.5));
  }
}

TEST_CASE("forward_s") {
  const auto mesh = build_mesh({0.0, 1.0, 3.0});
  CHECK(forward_s(NodalField(std::vector<double>{2.0, 2.0, 2.0}), mesh, 0) == 0.0);
  const NodalField f(std::vector<double>{0.0, 1.0, 3.0});
  CHECK(forward_s(f, mesh, 0) == 1.0);
  CHECK(forward_s(f, mesh, 1) == 1.0);
  CHECK_THROWS_AS(forward_s(f, mesh, 2), std::out_of_range);
}

TEST_CASE("backward_s on cell fields") {
  const auto uniform = uniform_mesh(0.0, 0.2, 2);
  CHECK(backward_s(CellField(std::vector<double>{4.0, 4.0}), uniform, 1) == 0.0);
  CHECK(backward_s(CellField(std::vector<double>{0.0, 0.1}), uniform, 1) == doctest::Approx(1.0));

  const auto mesh = build_mesh({0.0, 1.0, 3.0});
  CHECK(backward_s(CellField(std::vector<double>{1.0, 4.0}), mesh, 1) == 2.0);
  CHECK_THROWS_AS(backward_s(CellField(2), mesh, 0), std::out_of_range);
  CHECK_THROWS_AS(backward_s(CellField(2), mesh, 2), std::out_of_range);
}

TEST_CASE("interp_nodal_pressure") {
  CHECK(interp_nodal_pressure(CellField(std::vector<double>{1.0, 3.0}),
                              build_mesh({0.0, 1.0, 2.0}), 1) == 2.0);
  CHECK(interp_nodal_pressure(CellField(std::vector<double>{1.0, 4.0}),
                              build_mesh({0.0, 1.0, 3.0}), 1) == 2.0);
  CHECK_THROWS_AS(interp_nodal_pressure(CellField(2), build_mesh({0.0, 1.0, 3.0}), 0),
                  std::out_of_range);
}

TEST_CASE("cell_average") {
  const std::vector<double> u{1.0, 3.0};
  CHECK(cell_average([](std::size_t) { return 7.0; }, 0) == 7.0);
  CHECK(cell_average([&](std::size_t i) { return u[i] * u[i]; }, 0) == 5.0);
  const std::vector<double> r{2.0, 4.0};
  CHECK(cell_average([&](std::size_t i) { return r[i] * 1.0; }, 0) == 3.0);
}

TEST_CASE("weighted") {
  CHECK(weighted(2.0, 4.0, 0.0) == 2.0);
  CHECK(weighted(2.0, 4.0, 1.0) == 4.0);
  CHECK(weighted(2.0, 4.0, 0.5) == 3.0);
  CHECK_THROWS_AS(weighted(2.0, 4.0, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(weighted(2.0, 4.0, 1.5), std::invalid_argument);
}

TEST_CASE("operator properties on random meshes") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto mesh = testing::random_mesh(rng, 6);
    const double a = coef(rng), b = coef(rng);

    NodalField f(mesh.nodes());
    for (std::size_t i = 0; i < mesh.nodes(); ++i) f[i] = a + b * mesh.s(i);
    for (std::size_t c = 0; c < mesh.cells(); ++c) {
      CHECK(forward_s(f, mesh, c) == doctest::Approx(b).epsilon(1e-10));
    }

    CellField g(mesh.cells());
    for (std::size_t c = 0; c < mesh.cells(); ++c) g[c] = a + b * mesh.midpoint(c);
    for (std::size_t i = 1; i < mesh.cells(); ++i) {
      CHECK(backward_s(g, mesh, i) == doctest::Approx(b).epsilon(1e-10));
      const double ps = interp_nodal_pressure(g, mesh, i);
      CHECK(ps >= std::min(g[i - 1], g[i]) - 1e-14);
      CHECK(ps <= std::max(g[i - 1], g[i]) + 1e-14);
    }
    CellField c_field(mesh.cells(), a);
    for (std::size_t i = 1; i < mesh.cells(); ++i) {
      CHECK(backward_s(c_field, mesh, i) == 0.0);
      CHECK(interp_nodal_pressure(c_field, mesh, i) == doctest::Approx(a).epsilon(1e-15));
    }

    // weighted is monotone in each argument
    const double alpha = unit(rng), lo = coef(rng), hi = coef(rng), bump = unit(rng);
    CHECK(weighted(lo + bump, hi, alpha) >= weighted(lo, hi, alpha) - 1e-15);
    CHECK(weighted(lo, hi + bump, alpha) >= weighted(lo, hi, alpha) - 1e-15);
  }
}

TEST_CASE("grid layer validation") {
  auto g = testing::rest_layer(4, 0, 1.0, 1.0, 1.4);
  CHECK_NOTHROW(g.validate(0));
  CHECK(g.mass_consistency_defect(0) <= 1e-15);

  auto bad = g;
  bad.rho[2] = 0.0;
  CHECK_THROWS_AS(bad.validate(0), LayerError);
  bad = g;
  bad.r[2] = bad.r[1];
  CHECK_THROWS_AS(bad.validate(0), LayerError);

  auto radial = testing::rest_layer(4, 2, 2.0, 1.0, 1.4, -0.5);
  CHECK_THROWS_AS(radial.validate(2), LayerError);
  CHECK_NOTHROW(radial.validate(0));

  auto spherical = testing::rest_layer(5, 2, 2.0, 1.0, 5.0 / 3.0);
  CHECK(spherical.mass_consistency_defect(2) <= 1e-14);
  spherical.rho[3] *= 1.01;
  CHECK(spherical.mass_consistency_defect(2) == doctest::Approx(0.01).epsilon(1e-9));
}

TEST_CASE("two-layer view requires a common mesh") {
  auto a = testing::rest_layer(4, 0, 1.0, 1.0, 1.4);
  auto b = testing::rest_layer(5, 0, 1.0, 1.0, 1.4);
  CHECK_THROWS_AS(TwoLayerView(a, b, 0.1), LayerError);
  CHECK_THROWS(TwoLayerView(a, a, 0.0));
}

#include <doctest.h>

#include <cmath>
#include <random>

#include "lagrange1d/claws.hpp"
#include "lagrange1d/setup.hpp"
#include "test_util.hpp"

using namespace lagrange1d;

namespace {

Problem pulse(int n, std::size_t cells, double amplitude = 0.05) {
  ProblemOptions opt;
  opt.n = n;
  opt.cells = cells;
  opt.amplitude = amplitude;
  return problem_library("smooth_pulse", opt);
}

/// Advances `steps` steps and returns the worst per-cell residual of `law`.
double worst_residual(const Problem& pb, LawId law, int steps, double tau,
                      const AuditOptions& options = {}) {
  GridLayer lo = make_initial_layer(pb.profile, pb.params.n);
  double worst = 0.0;
  for (int k = 0; k < steps; ++k) {
    auto res = step(lo, tau, pb.params);
    REQUIRE(res.report.accepted);
    const TwoLayerView view(lo, *res.hi, tau);
    const auto b = law == LawId::additional_2 ? audit_additional_2(view, pb.params, options)
                                              : audit(law, view, pb.params);
    worst = std::max(worst, b.per_cell_residual_max);
    lo = *res.hi;
  }
  return worst;
}

/// Layer pair with random, mutually inconsistent fields; no scheme equation
/// holds on it.
std::pair<GridLayer, GridLayer> random_pair(std::mt19937& rng, std::size_t cells, int n) {
  std::uniform_real_distribution<double> jitter(-0.2, 0.2), positive(0.5, 2.0);
  auto mesh = std::make_shared<const MassMesh>(testing::random_mesh(rng, cells));
  auto make = [&](double t) {
    GridLayer g(mesh, t);
    double r = n > 0 ? 0.3 : -0.5;
    for (std::size_t i = 0; i <= cells; ++i) {
      g.r[i] = r;
      r += (1.0 + jitter(rng)) / cells;
      g.u[i] = jitter(rng);
    }
    for (std::size_t c = 0; c < cells; ++c) {
      g.rho[c] = positive(rng);
      g.p[c] = positive(rng);
      g.eps[c] = positive(rng);
    }
    return g;
  };
  GridLayer lo = make(0.4);
  GridLayer hi = make(0.45);
  return {lo, hi};
}

}  // namespace

TEST_CASE("law names") {
  for (LawId law : all_laws()) CHECK(law_from_string(to_string(law)) == law);
  CHECK_FALSE(law_from_string("entropy").has_value());
  CHECK(all_laws().size() == 6);
  CHECK(to_string(LawStatus::not_applicable) == "not_applicable");
}

TEST_CASE("budget tolerance check") {
  ConservationBudget b;
  b.per_cell_residual_max = 1e-12;
  b.relative_defect = 1e-15;
  CHECK(b.within(1e-11, 1e-14));
  CHECK_FALSE(b.within(1e-13, 1e-14));
  CHECK_FALSE(b.within(1e-11, 1e-16));
  b.status = LawStatus::reported;
  CHECK(b.within(0.0, 0.0));
}

TEST_CASE("a gas at rest closes every budget exactly") {
  for (int n = 0; n <= 2; ++n) {
    SchemeParams params;
    params.n = n;
    params.eos_mode = EosMode::conservative;
    params.gamma = params.special_gamma();
    const auto lo = testing::rest_layer(6, n, 1.0, 1.0, params.gamma, n > 0 ? 0.5 : 0.0);
    auto hi = lo;
    hi.t = 0.5;
    const TwoLayerView view(lo, hi, 0.5);
    for (const auto& b : audit_laws(all_laws(), view, params)) {
      CAPTURE(to_string(b.law));
      if (b.status == LawStatus::not_applicable) continue;
      CHECK(b.per_cell_residual_max <= 1e-14);
      CHECK(b.relative_defect <= 1e-15);
    }
    CHECK(work_balance_defect(view, params) == 0.0);
  }
}

TEST_CASE("static additional laws single out the special exponent") {
  // For a gas at rest, 2 eps = p V exactly when gamma = 3 (planar), so the
  // first additional law only closes at that exponent.
  SchemeParams params;
  params.eos_mode = EosMode::conservative;
  for (double gamma : {3.0, 1.4}) {
    params.gamma = gamma;
    const auto lo = testing::rest_layer(5, 0, 2.0, 1.5, gamma);
    auto hi = lo;
    hi.t = 0.1;
    const TwoLayerView view(lo, hi, 0.1);
    const auto b = audit_additional_1(view, params);
    // residual = 2 eps - p/rho in every cell
    const double expected = 2.0 * 1.5 / ((gamma - 1.0) * 2.0) - 1.5 / 2.0;
    for (double r : b.residuals) CHECK(r == doctest::Approx(expected).epsilon(1e-12).scale(1.0));
    CHECK(b.status == (gamma == 3.0 ? LawStatus::enforced : LawStatus::reported));
  }
}

TEST_CASE("signed defect equals the telescoped residual sum on arbitrary layers") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = trial % 3;
    const std::size_t cells = 3 + trial % 9;
    auto [lo, hi] = random_pair(rng, cells, n);
    SchemeParams params;
    params.n = n;
    params.eos_mode = trial % 2 ? EosMode::conservative : EosMode::pointwise;
    params.visc_nu = trial % 4 == 0 ? 0.7 : 0.0;
    params.bc_right = BoundaryCondition::pressure_trace(1.1, 0.3);
    if (n == 0) params.bc_left = BoundaryCondition::pressure_trace(0.9);
    const TwoLayerView view(lo, hi, 0.05);
    for (const auto& b : audit_laws(all_laws(), view, params)) {
      if (b.status == LawStatus::not_applicable && b.residuals.empty()) continue;
      CAPTURE(to_string(b.law));
      const double scale =
          std::abs(b.density_sum_lo) + std::abs(b.density_sum_hi) + std::abs(b.boundary_flux_sum);
      CHECK(std::abs(b.signed_defect - b.telescoped_residual_sum) <= 1e-13 * scale);
      CHECK(b.signed_defect ==
            doctest::Approx(b.density_sum_hi - b.density_sum_lo + b.boundary_flux_sum));
    }
  }
}

TEST_CASE("momentum and centre of mass exist only in planar geometry") {
  for (int n : {1, 2}) {
    SchemeParams params;
    params.n = n;
    const auto lo = testing::rest_layer(4, n, 1.0, 1.0, 1.4, 0.5);
    auto hi = lo;
    const TwoLayerView view(lo, hi, 0.1);
    CHECK(audit_momentum(view, params).status == LawStatus::not_applicable);
    CHECK(audit_center_of_mass(view, params).status == LawStatus::not_applicable);
    CHECK(audit_mass(view, params).status == LawStatus::enforced);
  }
}

TEST_CASE("uniform translation has zero centre-of-mass residual") {
  SchemeParams params;
  auto lo = testing::rest_layer(4, 0, 1.0, 1.0, 1.4);
  for (std::size_t i = 0; i < lo.nodes(); ++i) lo.u[i] = 0.5;
  auto hi = lo;
  hi.t = 0.25;
  for (std::size_t i = 0; i < lo.nodes(); ++i) hi.r[i] = lo.r[i] + 0.125;
  params.bc_left = BoundaryCondition::wall(0.5);
  params.bc_right = BoundaryCondition::wall(0.5);
  const TwoLayerView view(lo, hi, 0.25);
  const auto com = audit_center_of_mass(view, params);
  for (double r : com.residuals) CHECK(r == 0.0);
  const auto mom = audit_momentum(view, params);
  for (double r : mom.residuals) CHECK(r == 0.0);
  CHECK(audit_mass(view, params).per_cell_residual_max == 0.0);
}

TEST_CASE("energy residual splits into internal and kinetic parts") {
  // On a converged step: energy residual = work residual + <U * momentum residual>,
  // and both parts vanish, so the per-cell energy residual is at solver level.
  auto pb = pulse(0, 30, 0.1);
  GridLayer lo = make_initial_layer(pb.profile, 0);
  const auto res = step(lo, 0.01, pb.params);
  REQUIRE(res.report.accepted);
  const TwoLayerView view(lo, *res.hi, 0.01);
  const auto energy = audit_energy(view, pb.params);
  CHECK(energy.per_cell_residual_max <= 1e-11);
  CHECK(work_balance_defect(view, pb.params) <= 1e-11);

  // A perturbed upper velocity breaks energy in the two adjacent cells only.
  GridLayer bad = *res.hi;
  bad.u[12] += 1e-3;
  const TwoLayerView broken(lo, bad, 0.01);
  const auto b = audit_energy(broken, pb.params);
  for (std::size_t c = 0; c < b.residuals.size(); ++c) {
    CAPTURE(c);
    if (c == 11 || c == 12) {
      CHECK(std::abs(b.residuals[c]) > 1e-6);
    } else {
      CHECK(std::abs(b.residuals[c]) <= 1e-11);
    }
  }
}

TEST_CASE("wall totals are constant along a run") {
  for (int n = 0; n <= 2; ++n) {
    auto pb = pulse(n, 40, 0.1);
    GridLayer lo = make_initial_layer(pb.profile, n);
    double volume0 = 0.0, energy0 = 0.0;
    for (int k = 0; k < 100; ++k) {
      auto res = step(lo, 0.005, pb.params);
      REQUIRE(res.report.accepted);
      const TwoLayerView view(lo, *res.hi, 0.005);
      const auto mass = audit_mass(view, pb.params);
      const auto energy = audit_energy(view, pb.params);
      if (k == 0) {
        volume0 = mass.density_sum_lo;
        energy0 = energy.density_sum_lo;
      }
      CHECK(mass.boundary_flux_sum == 0.0);
      CHECK(energy.boundary_flux_sum == 0.0);
      CHECK(std::abs(mass.density_sum_hi - volume0) <= 1e-12 * volume0);
      CHECK(std::abs(energy.density_sum_hi - energy0) <= 1e-12 * energy0);
      lo = *res.hi;
    }
  }
}

TEST_CASE("additional laws hold at the special exponent") {
  for (int n = 0; n <= 2; ++n) {
    CAPTURE(n);
    const auto pb = pulse(n, 30, 0.1);
    REQUIRE(pb.params.eos_mode == EosMode::conservative);
    REQUIRE(pb.params.gamma == pb.params.special_gamma());
    const double a1 = worst_residual(pb, LawId::additional_1, 10, 0.01);
    const double a2 = worst_residual(pb, LawId::additional_2, 10, 0.01);
    CHECK(a1 <= 1e-10);
    CHECK(a2 <= 1e-10);

    SUBCASE("not at another exponent") {
      auto wrong = pb;
      wrong.params.gamma = 1.4;
      wrong.profile.gamma = 1.4;
      CHECK(worst_residual(wrong, LawId::additional_1, 10, 0.01) >= 1e4 * a1);
    }
    SUBCASE("not with the pointwise equation of state") {
      auto pointwise = pb;
      pointwise.params.eos_mode = EosMode::pointwise;
      CHECK(worst_residual(pointwise, LawId::additional_2, 10, 0.01) >= 1e4 * a2);
    }
    SUBCASE("not without the kinetic correction") {
      AuditOptions drop;
      drop.drop_additional_correction = true;
      CHECK(worst_residual(pb, LawId::additional_2, 10, 0.01, drop) >= 1e4 * a2);
    }
  }
}

TEST_CASE("status of the additional laws") {
  auto pb = pulse(1, 10);
  const GridLayer lo = make_initial_layer(pb.profile, 1);
  auto hi = lo;
  hi.t = 0.1;
  const TwoLayerView view(lo, hi, 0.1);
  CHECK(audit_additional_1(view, pb.params).status == LawStatus::enforced);
  pb.params.visc_nu = 0.5;
  CHECK(audit_additional_2(view, pb.params).status == LawStatus::reported);
  pb.params.visc_nu = 0.0;
  pb.params.gamma = 1.4;
  CHECK(audit_additional_1(view, pb.params).status == LawStatus::reported);
  pb.params.eos_mode = EosMode::pointwise;
  CHECK(audit_additional_2(view, pb.params).status == LawStatus::not_applicable);
}

TEST_CASE("viscosity breaks the additional laws but not the basic ones") {
  auto pb = pulse(0, 40, 0.3);
  const double clean = worst_residual(pb, LawId::additional_1, 10, 0.01);
  pb.params.visc_nu = 1.0;
  CHECK(worst_residual(pb, LawId::additional_1, 10, 0.01) >= 1e4 * clean);
  CHECK(worst_residual(pb, LawId::energy, 10, 0.01) <= 1e-10);
  CHECK(worst_residual(pb, LawId::momentum, 10, 0.01) <= 1e-10);
  CHECK(worst_residual(pb, LawId::mass, 10, 0.01) <= 1e-10);
}

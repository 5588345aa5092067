#include "lagrange1d/claws.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace lagrange1d {

std::string to_string(LawId law) {
  switch (law) {
    case LawId::mass: return "mass";
    case LawId::energy: return "energy";
    case LawId::momentum: return "momentum";
    case LawId::center_of_mass: return "center_of_mass";
    case LawId::additional_1: return "additional_1";
    case LawId::additional_2: return "additional_2";
  }
  return "unknown";
}

std::optional<LawId> law_from_string(const std::string& name) {
  for (LawId law : all_laws()) {
    if (to_string(law) == name) return law;
  }
  return std::nullopt;
}

std::vector<LawId> all_laws() {
  return {LawId::mass,         LawId::energy,       LawId::momentum,
          LawId::center_of_mass, LawId::additional_1, LawId::additional_2};
}

std::string to_string(LawStatus s) {
  switch (s) {
    case LawStatus::enforced: return "enforced";
    case LawStatus::reported: return "reported";
    case LawStatus::not_applicable: return "not_applicable";
  }
  return "unknown";
}

bool ConservationBudget::within(double per_cell_tol, double global_rel_tol) const {
  if (status != LawStatus::enforced) return true;
  return per_cell_residual_max <= per_cell_tol && relative_defect <= global_rel_tol;
}

namespace {

using LayerDensity = std::function<double(const GridLayer&, double, std::size_t)>;

/// Quantities every audit needs, recomputed from the raw layers.
struct StepData {
  const TwoLayerView& view;
  const SchemeParams& params;
  std::size_t cells;
  double tau, t_lo, t_hi;
  std::vector<double> R, U, r_mid;  // nodal
  std::vector<double> p_eff;        // cell: P + omega
  std::vector<double> p_star;       // nodal, including boundary closures

  StepData(const TwoLayerView& v, const SchemeParams& p)
      : view(v), params(p), cells(v.lo.cells()), tau(v.tau), t_lo(v.lo.t), t_hi(v.lo.t + v.tau) {
    const std::size_t nn = cells + 1;
    R.resize(nn);
    U.resize(nn);
    r_mid.resize(nn);
    for (std::size_t i = 0; i < nn; ++i) {
      R[i] = r_factor(v.lo.r[i], v.hi.r[i], p.n);
      U[i] = 0.5 * (v.lo.u[i] + v.hi.u[i]);
      r_mid[i] = 0.5 * (v.lo.r[i] + v.hi.r[i]);
    }
    const CellField P = scheme_pressure(v, p);
    CellField eff(cells);
    p_eff.resize(cells);
    for (std::size_t c = 0; c < cells; ++c) {
      p_eff[c] = P[c] + viscous_pressure(v, p, c);
      eff[c] = p_eff[c];
    }
    p_star.resize(nn);
    for (std::size_t i = 1; i < cells; ++i) p_star[i] = interp_nodal_pressure(eff, v.mesh(), i);
    p_star[0] = boundary_p_star(true);
    p_star[cells] = boundary_p_star(false);
  }

  double boundary_p_star(bool left) const {
    const BoundaryCondition& bc = left ? params.bc_left : params.bc_right;
    const bool wall = bc.kind == BoundaryCondition::Kind::wall ||
                      (left && origin_node(view.lo, params.n));
    if (wall) return left ? p_eff[0] : p_eff[cells - 1];
    return boundary_pressure(bc, t_lo, tau, params.time_weight());
  }

  double h(std::size_t c) const { return view.mesh().h(c); }
};

double relative(double defect, double scale) { return scale > 0.0 ? defect / scale : defect; }

/// Generic cell law: density D(layer, cell, which) and nodal flux F(node).
ConservationBudget cell_law(LawId law, const StepData& d,
                            const LayerDensity& density,
                            const std::function<double(std::size_t)>& flux) {
  ConservationBudget b;
  b.law = law;
  b.residuals.resize(d.cells);
  std::vector<double> F(d.cells + 1);
  for (std::size_t i = 0; i <= d.cells; ++i) F[i] = flux(i);
  double scale = 0.0;
  double telescoped = 0.0;
  for (std::size_t c = 0; c < d.cells; ++c) {
    const double D_lo = density(d.view.lo, d.t_lo, c);
    const double D_hi = density(d.view.hi, d.t_hi, c);
    const double h = d.h(c);
    b.residuals[c] = time_diff(D_lo, D_hi, d.tau) + (F[c + 1] - F[c]) / h;
    b.per_cell_residual_max = std::max(b.per_cell_residual_max, std::abs(b.residuals[c]));
    b.density_sum_lo += h * D_lo;
    b.density_sum_hi += h * D_hi;
    telescoped += h * b.residuals[c];
    scale += h * (std::abs(D_lo) + std::abs(D_hi));
  }
  b.flux_left = F[0];
  b.flux_right = F[d.cells];
  b.boundary_flux_sum = d.tau * (F[d.cells] - F[0]);
  b.signed_defect = (b.density_sum_hi - b.density_sum_lo) + b.boundary_flux_sum;
  b.identity_defect = std::abs(b.signed_defect);
  b.telescoped_residual_sum = d.tau * telescoped;
  scale += d.tau * (std::abs(F[0]) + std::abs(F[d.cells]));
  b.relative_defect = relative(b.identity_defect, scale);
  return b;
}

/// Generic nodal law with closure pressure at the ends. `density` is per
/// node, `coefficient` multiplies the pressure gradient term and the flux is
/// coefficient * p_star at the boundary.
ConservationBudget nodal_law(LawId law, const StepData& d,
                             const LayerDensity& density,
                             double coefficient) {
  ConservationBudget b;
  b.law = law;
  const auto& mesh = d.view.mesh();
  const std::size_t N = d.cells;
  b.residuals.resize(N + 1);
  double scale = 0.0;
  double telescoped = 0.0;
  for (std::size_t i = 0; i <= N; ++i) {
    const double D_lo = density(d.view.lo, d.t_lo, i);
    const double D_hi = density(d.view.hi, d.t_hi, i);
    double gradient;
    if (i == 0) {
      gradient = (d.p_eff[0] - d.p_star[0]) / (0.5 * mesh.h(0));
    } else if (i == N) {
      gradient = (d.p_star[N] - d.p_eff[N - 1]) / (0.5 * mesh.h(N - 1));
    } else {
      gradient = (d.p_eff[i] - d.p_eff[i - 1]) / (0.5 * (mesh.h(i) + mesh.h(i - 1)));
    }
    b.residuals[i] = time_diff(D_lo, D_hi, d.tau) + coefficient * gradient;
    if (i > 0 && i < N) {
      b.per_cell_residual_max = std::max(b.per_cell_residual_max, std::abs(b.residuals[i]));
    }
    const double m = mesh.nodal_mass(i);
    b.density_sum_lo += m * D_lo;
    b.density_sum_hi += m * D_hi;
    telescoped += m * b.residuals[i];
    scale += m * (std::abs(D_lo) + std::abs(D_hi));
  }
  b.flux_left = coefficient * d.p_star[0];
  b.flux_right = coefficient * d.p_star[N];
  b.boundary_flux_sum = d.tau * (b.flux_right - b.flux_left);
  b.signed_defect = (b.density_sum_hi - b.density_sum_lo) + b.boundary_flux_sum;
  b.identity_defect = std::abs(b.signed_defect);
  b.telescoped_residual_sum = d.tau * telescoped;
  scale += d.tau * (std::abs(b.flux_left) + std::abs(b.flux_right));
  b.relative_defect = relative(b.identity_defect, scale);
  return b;
}

ConservationBudget not_applicable(LawId law, std::string note) {
  ConservationBudget b;
  b.law = law;
  b.status = LawStatus::not_applicable;
  b.note = std::move(note);
  return b;
}

double total_energy(const GridLayer& g, std::size_t c) {
  const auto u_sq = [&](std::size_t i) { return g.u[i] * g.u[i]; };
  return g.eps[c] + 0.5 * cell_average(u_sq, c);
}

double avg_ru(const GridLayer& g, std::size_t c) {
  return cell_average([&](std::size_t i) { return g.r[i] * g.u[i]; }, c);
}

void set_additional_status(ConservationBudget& b, const SchemeParams& params) {
  if (params.eos_mode != EosMode::conservative) {
    b.status = LawStatus::not_applicable;
    b.note = "pointwise equation of state";
  } else if (params.gamma != params.special_gamma()) {
    b.status = LawStatus::reported;
    b.note = "gamma " + std::to_string(params.gamma) + " differs from 1+2/(n+1) = " +
             std::to_string(params.special_gamma());
  } else if (params.visc_nu > 0.0) {
    b.status = LawStatus::reported;
    b.note = "artificial viscosity breaks the additional laws";
  }
}

}  // namespace

ConservationBudget audit_mass(const TwoLayerView& view, const SchemeParams& params) {
  const StepData d(view, params);
  return cell_law(
      LawId::mass, d, [](const GridLayer& g, double, std::size_t c) { return 1.0 / g.rho[c]; },
      [&](std::size_t i) { return -d.R[i] * d.U[i]; });
}

ConservationBudget audit_energy(const TwoLayerView& view, const SchemeParams& params) {
  const StepData d(view, params);
  return cell_law(
      LawId::energy, d,
      [](const GridLayer& g, double, std::size_t c) { return total_energy(g, c); },
      [&](std::size_t i) { return d.R[i] * d.p_star[i] * d.U[i]; });
}

ConservationBudget audit_momentum(const TwoLayerView& view, const SchemeParams& params) {
  if (params.n != 0) return not_applicable(LawId::momentum, "momentum law requires n = 0");
  const StepData d(view, params);
  return nodal_law(
      LawId::momentum, d, [](const GridLayer& g, double, std::size_t i) { return g.u[i]; }, 1.0);
}

ConservationBudget audit_center_of_mass(const TwoLayerView& view, const SchemeParams& params) {
  if (params.n != 0) {
    return not_applicable(LawId::center_of_mass, "center-of-mass law requires n = 0");
  }
  const StepData d(view, params);
  const double t_mid = 0.5 * (d.t_lo + d.t_hi);
  return nodal_law(
      LawId::center_of_mass, d,
      [](const GridLayer& g, double t, std::size_t i) { return g.r[i] - t * g.u[i]; }, -t_mid);
}

ConservationBudget audit_additional_1(const TwoLayerView& view, const SchemeParams& params) {
  const StepData d(view, params);
  const double t_mid = 0.5 * (d.t_lo + d.t_hi);
  auto b = cell_law(
      LawId::additional_1, d,
      [](const GridLayer& g, double t, std::size_t c) {
        return 2.0 * t * total_energy(g, c) - avg_ru(g, c);
      },
      [&](std::size_t i) { return d.R[i] * d.p_star[i] * (2.0 * t_mid * d.U[i] - d.r_mid[i]); });
  set_additional_status(b, params);
  return b;
}

ConservationBudget audit_additional_2(const TwoLayerView& view, const SchemeParams& params,
                                      const AuditOptions& options) {
  const StepData d(view, params);
  const double t_mid = 0.5 * (d.t_lo + d.t_hi);
  const double t_sq_mid = 0.5 * (d.t_lo * d.t_lo + d.t_hi * d.t_hi);
  const double correction = options.drop_additional_correction ? 0.0 : d.tau * d.tau / 8.0;
  auto b = cell_law(
      LawId::additional_2, d,
      [&](const GridLayer& g, double t, std::size_t c) {
        const auto r_sq = [&](std::size_t i) { return g.r[i] * g.r[i]; };
        const auto u_sq = [&](std::size_t i) { return g.u[i] * g.u[i]; };
        return t * t * total_energy(g, c) - t * avg_ru(g, c) + 0.5 * cell_average(r_sq, c) +
               correction * cell_average(u_sq, c);
      },
      [&](std::size_t i) {
        return d.R[i] * d.p_star[i] * (t_sq_mid * d.U[i] - t_mid * d.r_mid[i]);
      });
  set_additional_status(b, params);
  return b;
}

ConservationBudget audit(LawId law, const TwoLayerView& view, const SchemeParams& params) {
  switch (law) {
    case LawId::mass: return audit_mass(view, params);
    case LawId::energy: return audit_energy(view, params);
    case LawId::momentum: return audit_momentum(view, params);
    case LawId::center_of_mass: return audit_center_of_mass(view, params);
    case LawId::additional_1: return audit_additional_1(view, params);
    case LawId::additional_2: return audit_additional_2(view, params);
  }
  throw std::invalid_argument("unknown law");
}

std::vector<ConservationBudget> audit_laws(const std::vector<LawId>& laws,
                                           const TwoLayerView& view, const SchemeParams& params) {
  std::vector<ConservationBudget> out;
  out.reserve(laws.size());
  for (LawId law : laws) out.push_back(audit(law, view, params));
  return out;
}

double work_balance_defect(const TwoLayerView& view, const SchemeParams& params) {
  const CellField P = scheme_pressure(view, params);
  double worst = 0.0;
  for (std::size_t c = 0; c < view.lo.cells(); ++c) {
    const double omega = viscous_pressure(view, params, c);
    const double eps_t = time_diff(view.lo.eps[c], view.hi.eps[c], view.tau);
    const double vol_t = time_diff(1.0 / view.lo.rho[c], 1.0 / view.hi.rho[c], view.tau);
    worst = std::max(worst, std::abs(eps_t + (P[c] + omega) * vol_t));
  }
  return worst;
}

}  // namespace lagrange1d

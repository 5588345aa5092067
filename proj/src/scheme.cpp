#include "lagrange1d/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lagrange1d/banded.hpp"

namespace lagrange1d {

BoundaryCondition BoundaryCondition::wall(double velocity) {
  BoundaryCondition bc;
  bc.kind = Kind::wall;
  bc.velocity = velocity;
  return bc;
}

BoundaryCondition BoundaryCondition::pressure_trace(double p0, double rate) {
  BoundaryCondition bc;
  bc.kind = Kind::pressure;
  bc.pressure = p0;
  bc.pressure_rate = rate;
  return bc;
}

void SchemeParams::validate() const {
  if (n < 0 || n > 2) throw ConfigError("geometry exponent n must be 0, 1 or 2");
  if (!std::isfinite(gamma) || gamma == 0.0 || gamma == 1.0) {
    throw ConfigError("adiabatic exponent must be finite and differ from 0 and 1");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("alpha must lie in [0, 1]");
  if (!(visc_nu >= 0.0) || !std::isfinite(visc_nu)) {
    throw ConfigError("viscosity coefficient must be finite and nonnegative");
  }
  if (!(newton_tol > 0.0)) throw ConfigError("newton_tol must be positive");
  if (newton_max_iter < 1) throw ConfigError("newton_max_iter must be at least 1");
  for (const auto* bc : {&bc_left, &bc_right}) {
    if (!std::isfinite(bc->velocity) || !std::isfinite(bc->pressure) ||
        !std::isfinite(bc->pressure_rate)) {
      throw ConfigError("boundary data must be finite");
    }
  }
}

std::string to_string(StepFailure f) {
  switch (f) {
    case StepFailure::none: return "none";
    case StepFailure::newton_not_converged: return "newton_not_converged";
    case StepFailure::positivity: return "positivity/ordering failure";
    case StepFailure::singular_jacobian: return "singular_jacobian";
  }
  return "unknown";
}

double r_factor(double r_lo, double r_hi, int n) {
  switch (n) {
    case 0: return 1.0;
    case 1: return 0.5 * (r_hi + r_lo);
    case 2: return (r_hi * r_hi + r_hi * r_lo + r_lo * r_lo) / 3.0;
    default: throw ConfigError("geometry exponent n must be 0, 1 or 2");
  }
}

double eos_geometric_bracket(double r_lo, double r_hi, int n) {
  const double dr = r_hi - r_lo;
  switch (n) {
    case 0: return 0.0;
    case 1: return -0.25 * dr * dr;
    case 2: return -(r_hi + r_lo) * dr * dr / 3.0;
    default: throw ConfigError("geometry exponent n must be 0, 1 or 2");
  }
}

bool origin_node(const GridLayer& layer, int n) { return n >= 1 && layer.r[0] == 0.0; }

double viscous_pressure(double visc_nu, double rho_mid, double du, bool compressing) {
  if (visc_nu == 0.0 || !compressing) return 0.0;
  return visc_nu * rho_mid * du * du;
}

namespace {

double mid_velocity(const TwoLayerView& v, std::size_t i) { return 0.5 * (v.lo.u[i] + v.hi.u[i]); }

double flux_rU(const TwoLayerView& v, int n, std::size_t i) {
  return r_factor(v.lo.r[i], v.hi.r[i], n) * mid_velocity(v, i);
}

double divergence(const TwoLayerView& v, int n, std::size_t cell) {
  return (flux_rU(v, n, cell + 1) - flux_rU(v, n, cell)) / v.mesh().h(cell);
}

}  // namespace

double viscous_pressure(const TwoLayerView& view, const SchemeParams& params, std::size_t cell) {
  if (params.visc_nu == 0.0) return 0.0;
  const double rho_mid = 0.5 * (view.lo.rho[cell] + view.hi.rho[cell]);
  const double du = mid_velocity(view, cell + 1) - mid_velocity(view, cell);
  return viscous_pressure(params.visc_nu, rho_mid, du, divergence(view, params.n, cell) < 0.0);
}

CellField scheme_pressure(const TwoLayerView& view, const SchemeParams& params) {
  CellField P(view.lo.cells());
  const double a = params.time_weight();
  for (std::size_t c = 0; c < P.size(); ++c) P[c] = weighted(view.lo.p[c], view.hi.p[c], a);
  return P;
}

double boundary_pressure(const BoundaryCondition& bc, double t, double tau, double alpha) {
  return weighted(bc.pressure_at(t), bc.pressure_at(t + tau), alpha);
}

double residual_mass(const TwoLayerView& view, const SchemeParams& params, std::size_t cell) {
  return time_diff(1.0 / view.lo.rho[cell], 1.0 / view.hi.rho[cell], view.tau) -
         divergence(view, params.n, cell);
}

double residual_momentum(const TwoLayerView& view, const SchemeParams& params,
                         const CellField& P, std::size_t node) {
  const auto& mesh = view.mesh();
  if (node == 0 || node >= mesh.cells()) {
    throw std::out_of_range("residual_momentum: boundary nodes use the boundary closure");
  }
  const double right = P[node] + viscous_pressure(view, params, node);
  const double left = P[node - 1] + viscous_pressure(view, params, node - 1);
  const double R = r_factor(view.lo.r[node], view.hi.r[node], params.n);
  return time_diff(view.lo.u[node], view.hi.u[node], view.tau) +
         R * (right - left) / (0.5 * (mesh.h(node) + mesh.h(node - 1)));
}

double residual_energy(const TwoLayerView& view, const SchemeParams& params, const CellField& P,
                       std::size_t cell) {
  const double effective = P[cell] + viscous_pressure(view, params, cell);
  return time_diff(view.lo.eps[cell], view.hi.eps[cell], view.tau) +
         effective * divergence(view, params.n, cell);
}

double residual_trajectory(const TwoLayerView& view, std::size_t node) {
  return time_diff(view.lo.r[node], view.hi.r[node], view.tau) - mid_velocity(view, node);
}

double residual_eos(const TwoLayerView& view, const SchemeParams& params, const CellField& P,
                    std::size_t cell) {
  const double gm1 = params.gamma - 1.0;
  if (params.eos_mode == EosMode::pointwise) {
    return view.hi.eps[cell] - view.hi.p[cell] / (gm1 * view.hi.rho[cell]);
  }
  const double tau = view.tau;
  const auto ut_sq = [&](std::size_t i) {
    const double ut = time_diff(view.lo.u[i], view.hi.u[i], tau);
    return ut * ut;
  };
  const auto bracket = [&](std::size_t i) {
    return eos_geometric_bracket(view.lo.r[i], view.hi.r[i], params.n);
  };
  const double eps_mid = 0.5 * (view.lo.eps[cell] + view.hi.eps[cell]);
  const double vol_mid = 0.5 * (1.0 / view.lo.rho[cell] + 1.0 / view.hi.rho[cell]);
  const double bracket_s = (bracket(cell + 1) - bracket(cell)) / view.mesh().h(cell);
  const double rhs = P[cell] / gm1 * vol_mid - tau * tau / 8.0 * cell_average(ut_sq, cell) +
                     0.5 * P[cell] * bracket_s;
  return eps_mid - rhs;
}

double residual_boundary(const TwoLayerView& view, const SchemeParams& params,
                         const CellField& P, bool left) {
  const auto& mesh = view.mesh();
  const std::size_t node = left ? 0 : mesh.cells();
  if (left && origin_node(view.lo, params.n)) return view.hi.u[0];
  const BoundaryCondition& bc = left ? params.bc_left : params.bc_right;
  if (bc.kind == BoundaryCondition::Kind::wall) return view.hi.u[node] - bc.velocity;

  const double pb = boundary_pressure(bc, view.lo.t, view.tau, params.time_weight());
  const double R = r_factor(view.lo.r[node], view.hi.r[node], params.n);
  const double ut = time_diff(view.lo.u[node], view.hi.u[node], view.tau);
  if (left) {
    const double inner = P[0] + viscous_pressure(view, params, 0);
    return ut + R * (inner - pb) / (0.5 * mesh.h(0));
  }
  const std::size_t last = mesh.cells() - 1;
  const double inner = P[last] + viscous_pressure(view, params, last);
  return ut + R * (pb - inner) / (0.5 * mesh.h(last));
}

namespace {

constexpr std::size_t kBand = 2;

/// Newton system in the interleaved unknowns (u_0, q_0, u_1, q_1, ..., u_N)
/// where q is p_hat (pointwise mode) or the midpoint pressure P
/// (conservative mode). Position, volume and internal energy of the new
/// layer follow explicitly from the trajectory, mass and energy equations.
class StepSystem {
 public:
  StepSystem(const GridLayer& lo, double tau, const SchemeParams& params)
      : lo_(lo), tau_(tau), params_(params), cells_(lo.cells()) {
    row_scale_.resize(size());
    for (std::size_t i = 0; i <= cells_; ++i) {
      const bool fixed = is_fixed_node(i);
      row_scale_[2 * i] = fixed ? 1.0 : tau_ / std::max(1.0, std::abs(lo_.u[i]));
    }
    for (std::size_t c = 0; c < cells_; ++c) {
      row_scale_[2 * c + 1] = 1.0 / std::max(1.0, std::abs(lo_.eps[c]));
    }
  }

  std::size_t size() const { return 2 * cells_ + 1; }

  std::vector<double> initial_guess() const {
    std::vector<double> x(size());
    for (std::size_t i = 0; i <= cells_; ++i) x[2 * i] = lo_.u[i];
    for (std::size_t c = 0; c < cells_; ++c) x[2 * c + 1] = lo_.p[c];
    return x;
  }

  struct Candidate {
    GridLayer hi;
    CellField P;
    bool valid = true;
  };

  Candidate build(const std::vector<double>& x) const {
    const int n = params_.n;
    Candidate cand{GridLayer(lo_.mesh, lo_.t + tau_), CellField(cells_), true};
    GridLayer& hi = cand.hi;
    std::vector<double> flux(cells_ + 1);
    for (std::size_t i = 0; i <= cells_; ++i) {
      hi.u[i] = x[2 * i];
      const double mid = 0.5 * (lo_.u[i] + hi.u[i]);
      hi.r[i] = lo_.r[i] + tau_ * mid;
      flux[i] = r_factor(lo_.r[i], hi.r[i], n) * mid;
    }
    const double a = params_.time_weight();
    const bool conservative = params_.eos_mode == EosMode::conservative;
    for (std::size_t c = 0; c < cells_; ++c) {
      const double div = (flux[c + 1] - flux[c]) / lo_.mesh->h(c);
      const double rho = lo_.rho[c];
      hi.rho[c] = rho / (1.0 + tau_ * rho * div);
      const double q = x[2 * c + 1];
      cand.P[c] = conservative ? q : weighted(lo_.p[c], q, a);
      hi.p[c] = conservative ? 2.0 * q - lo_.p[c] : q;
      if (!(hi.rho[c] > 0.0) || !std::isfinite(hi.rho[c])) cand.valid = false;
    }
    for (std::size_t i = 0; i <= cells_; ++i) {
      if (!std::isfinite(hi.r[i]) || (n >= 1 && hi.r[i] < 0.0) ||
          (i > 0 && !(hi.r[i] > hi.r[i - 1]))) {
        cand.valid = false;
      }
    }
    if (!cand.valid) return cand;

    // Viscosity depends on rho_hat and the midpoint velocities only, so it is
    // available before eps_hat.
    const TwoLayerView view(lo_, hi, tau_);
    for (std::size_t c = 0; c < cells_; ++c) {
      const double div = (flux[c + 1] - flux[c]) / lo_.mesh->h(c);
      const double omega = viscous_pressure(view, params_, c);
      hi.eps[c] = lo_.eps[c] - tau_ * (cand.P[c] + omega) * div;
    }
    return cand;
  }

  /// Scaled residual vector; empty if the candidate is inadmissible.
  std::vector<double> residual(const Candidate& cand) const {
    if (!cand.valid) return {};
    std::vector<double> F(size());
    const TwoLayerView view(lo_, cand.hi, tau_);
    F[0] = residual_boundary(view, params_, cand.P, true);
    F[2 * cells_] = residual_boundary(view, params_, cand.P, false);
    for (std::size_t i = 1; i < cells_; ++i) {
      F[2 * i] = residual_momentum(view, params_, cand.P, i);
    }
    for (std::size_t c = 0; c < cells_; ++c) {
      F[2 * c + 1] = residual_eos(view, params_, cand.P, c);
    }
    for (std::size_t k = 0; k < F.size(); ++k) {
      F[k] *= row_scale_[k];
      if (!std::isfinite(F[k])) return {};
    }
    return F;
  }

  std::vector<double> residual(const std::vector<double>& x) const { return residual(build(x)); }

  /// Forward-difference Jacobian, perturbing every (2*band+1)-th column at once.
  bool jacobian(const std::vector<double>& x, const std::vector<double>& F,
                BandedMatrix& J) const {
    J.set_zero();
    const std::size_t m = size();
    const std::size_t stride = 2 * kBand + 1;
    const double root_eps = std::sqrt(std::numeric_limits<double>::epsilon());
    for (std::size_t color = 0; color < stride; ++color) {
      for (double sign : {1.0, -1.0}) {
        std::vector<double> xp = x;
        std::vector<double> delta(m, 0.0);
        for (std::size_t j = color; j < m; j += stride) {
          const double d = sign * root_eps * std::max(1.0, std::abs(x[j]));
          xp[j] = x[j] + d;
          delta[j] = xp[j] - x[j];
        }
        const auto Fp = residual(xp);
        if (Fp.empty()) continue;
        for (std::size_t j = color; j < m; j += stride) {
          const std::size_t lo = j >= kBand ? j - kBand : 0;
          const std::size_t hi = std::min(m - 1, j + kBand);
          for (std::size_t row = lo; row <= hi; ++row) {
            J.at(row, j) = (Fp[row] - F[row]) / delta[j];
          }
        }
        break;
      }
    }
    return true;
  }

 private:
  bool is_fixed_node(std::size_t i) const {
    if (i == 0) {
      return origin_node(lo_, params_.n) || params_.bc_left.kind == BoundaryCondition::Kind::wall;
    }
    if (i == cells_) return params_.bc_right.kind == BoundaryCondition::Kind::wall;
    return false;
  }

  const GridLayer& lo_;
  double tau_;
  const SchemeParams& params_;
  std::size_t cells_;
  std::vector<double> row_scale_;
};

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

EquationResiduals equation_residuals(const TwoLayerView& view, const SchemeParams& params) {
  EquationResiduals out;
  const CellField P = scheme_pressure(view, params);
  const std::size_t nc = view.lo.cells();
  for (std::size_t c = 0; c < nc; ++c) {
    out.mass = std::max(out.mass, std::abs(residual_mass(view, params, c)));
    out.energy = std::max(out.energy, std::abs(residual_energy(view, params, P, c)));
    out.eos = std::max(out.eos, std::abs(residual_eos(view, params, P, c)));
  }
  for (std::size_t i = 0; i <= nc; ++i) {
    out.trajectory = std::max(out.trajectory, std::abs(residual_trajectory(view, i)));
    if (i > 0 && i < nc) {
      out.momentum = std::max(out.momentum, std::abs(residual_momentum(view, params, P, i)));
    }
  }
  out.momentum = std::max({out.momentum, std::abs(residual_boundary(view, params, P, true)),
                           std::abs(residual_boundary(view, params, P, false))});
  return out;
}

}  // namespace

StepResult step(const GridLayer& lo, double tau, const SchemeParams& params) {
  params.validate();
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw std::invalid_argument("time step must be positive");
  }
  lo.validate(params.n);

  StepResult result;
  StepReport& report = result.report;
  const StepSystem system(lo, tau, params);

  std::vector<double> x = system.initial_guess();
  auto cand = system.build(x);
  auto F = system.residual(cand);
  if (F.empty()) {
    report.failure = StepFailure::positivity;
    report.message = "initial guess is inadmissible";
    return result;
  }
  double norm = max_abs(F);
  report.history.push_back(norm);

  BandedMatrix J(system.size(), kBand, kBand);
  int updates = 0;
  bool converged = norm <= params.newton_tol;
  report.iterations = 1;

  const auto newton_update = [&](bool require_decrease) -> bool {
    system.jacobian(x, F, J);
    std::vector<double> dx(F.size());
    for (std::size_t k = 0; k < F.size(); ++k) dx[k] = -F[k];
    if (!J.solve_in_place(dx)) {
      report.failure = StepFailure::singular_jacobian;
      return false;
    }
    double lambda = 1.0;
    for (int attempt = 0; attempt < 30; ++attempt, lambda *= 0.5) {
      std::vector<double> trial = x;
      for (std::size_t k = 0; k < trial.size(); ++k) trial[k] += lambda * dx[k];
      auto trial_cand = system.build(trial);
      auto trial_F = system.residual(trial_cand);
      if (trial_F.empty()) continue;
      const double trial_norm = max_abs(trial_F);
      if (require_decrease && !(trial_norm <= norm)) {
        if (attempt < 10) continue;
        if (lambda < 1.0 / 1024.0 && norm <= params.newton_tol) return false;
      }
      x = std::move(trial);
      cand = std::move(trial_cand);
      F = std::move(trial_F);
      norm = trial_norm;
      return true;
    }
    report.failure = StepFailure::positivity;
    return false;
  };

  while (!converged && report.iterations <= params.newton_max_iter) {
    if (!newton_update(false)) break;
    ++updates;
    ++report.iterations;
    report.history.push_back(norm);
    converged = norm <= params.newton_tol;
  }

  if (!converged) {
    if (report.failure == StepFailure::none) report.failure = StepFailure::newton_not_converged;
    report.final_residual_norm = norm;
    report.message = "Newton stopped at scaled residual " + std::to_string(norm) + " after " +
                     std::to_string(report.iterations) + " iterations";
    return result;
  }

  // One polishing update drives the residuals from the tolerance down to
  // round-off; it is kept only if it does not increase the norm.
  if (updates > 0) {
    const auto saved_x = x;
    const auto saved_F = F;
    const double saved_norm = norm;
    auto saved_cand = cand;
    const StepFailure saved_failure = report.failure;
    if (newton_update(true) && norm <= saved_norm) {
      ++report.iterations;
      report.history.push_back(norm);
    } else {
      x = saved_x;
      F = saved_F;
      norm = saved_norm;
      cand = std::move(saved_cand);
      report.failure = saved_failure;
    }
  }

  report.final_residual_norm = norm;
  try {
    cand.hi.validate(params.n);
  } catch (const LayerError& e) {
    report.failure = StepFailure::positivity;
    report.message = e.what();
    return result;
  }
  report.max_residuals = equation_residuals(TwoLayerView(lo, cand.hi, tau), params);
  report.accepted = true;
  result.hi = std::move(cand.hi);
  return result;
}

}  // namespace lagrange1d

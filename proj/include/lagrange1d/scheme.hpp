#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lagrange1d/state.hpp"

namespace lagrange1d {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class EosMode { pointwise, conservative };

struct BoundaryCondition {
  enum class Kind { wall, pressure };

  Kind kind = Kind::wall;
  /// Wall velocity (wall kind).
  double velocity = 0.0;
  /// External pressure trace p_b(t) = pressure + pressure_rate * t (pressure kind).
  double pressure = 0.0;
  double pressure_rate = 0.0;

  static BoundaryCondition wall(double velocity = 0.0);
  static BoundaryCondition pressure_trace(double p0, double rate = 0.0);

  double pressure_at(double t) const { return pressure + pressure_rate * t; }
};

struct SchemeParams {
  int n = 0;
  double gamma = 1.4;
  double alpha = 0.5;
  EosMode eos_mode = EosMode::pointwise;
  BoundaryCondition bc_left;
  BoundaryCondition bc_right;
  double visc_nu = 0.0;
  double newton_tol = 1e-12;
  int newton_max_iter = 50;

  /// Throws ConfigError when a field is out of range.
  void validate() const;

  /// The pressure weight actually used: alpha in pointwise mode, 0.5 in
  /// conservative mode where the pressure unknown is the cell-midpoint value.
  double time_weight() const { return eos_mode == EosMode::conservative ? 0.5 : alpha; }

  /// 1 + 2/(n+1): the adiabatic exponent admitting the two extra laws.
  double special_gamma() const { return 1.0 + 2.0 / (n + 1); }
};

enum class StepFailure { none, newton_not_converged, positivity, singular_jacobian };

std::string to_string(StepFailure f);

struct EquationResiduals {
  double mass = 0.0;
  double momentum = 0.0;
  double energy = 0.0;
  double trajectory = 0.0;
  double eos = 0.0;
};

struct StepReport {
  int iterations = 0;
  double final_residual_norm = 0.0;
  std::vector<double> history;
  EquationResiduals max_residuals;
  bool accepted = false;
  StepFailure failure = StepFailure::none;
  std::string message;
};

struct StepResult {
  std::optional<GridLayer> hi;
  StepReport report;
};

/// (r_hi^{n+1} - r_lo^{n+1}) / ((n+1)(r_hi - r_lo)) in closed form.
double r_factor(double r_lo, double r_hi, int n);

/// Compression-switched quadratic viscosity: nu * rho_mid * du^2 when the
/// cell is compressing, else 0.
double viscous_pressure(double visc_nu, double rho_mid, double du, bool compressing);

/// Viscous pressure of one cell evaluated on a two-layer view.
double viscous_pressure(const TwoLayerView& view, const SchemeParams& params, std::size_t cell);

/// Midpoint pressure P used by the scheme, recovered from the two layers:
/// p^{(alpha)} in pointwise mode, (p + p_hat)/2 in conservative mode.
CellField scheme_pressure(const TwoLayerView& view, const SchemeParams& params);

/// Boundary pressure used by the closures: p_b^{(alpha)} over the step.
double boundary_pressure(const BoundaryCondition& bc, double t, double tau, double alpha);

// Residuals of the discrete equations on a two-layer view. P is the cell
// pressure unknown (without viscosity).

double residual_mass(const TwoLayerView& view, const SchemeParams& params, std::size_t cell);
double residual_momentum(const TwoLayerView& view, const SchemeParams& params,
                         const CellField& P, std::size_t node);
double residual_energy(const TwoLayerView& view, const SchemeParams& params, const CellField& P,
                       std::size_t cell);
double residual_trajectory(const TwoLayerView& view, std::size_t node);
double residual_eos(const TwoLayerView& view, const SchemeParams& params, const CellField& P,
                    std::size_t cell);

/// Closure at node 0 (left) or node N (right). Wall: u_hat - u_wall.
/// Pressure: one-sided momentum equation against p_b^{(alpha)}.
double residual_boundary(const TwoLayerView& view, const SchemeParams& params,
                         const CellField& P, bool left);

/// The node-i bracket r^{(0.5)} R - (r^{n+1})^{(0.5)} of the discrete
/// equation of state, in its closed form.
double eos_geometric_bracket(double r_lo, double r_hi, int n);

/// True when node 0 sits on the symmetry centre and must be held fixed.
bool origin_node(const GridLayer& layer, int n);

/// One implicit step. On failure `hi` is empty and the report says why.
StepResult step(const GridLayer& lo, double tau, const SchemeParams& params);

}  // namespace lagrange1d

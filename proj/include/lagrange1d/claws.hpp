#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lagrange1d/scheme.hpp"
#include "lagrange1d/state.hpp"

namespace lagrange1d {

enum class LawId { mass, energy, momentum, center_of_mass, additional_1, additional_2 };

std::string to_string(LawId law);
std::optional<LawId> law_from_string(const std::string& name);
std::vector<LawId> all_laws();

/// enforced: the law must close; reported: evaluated, expected nonzero
/// (wrong gamma or active viscosity); not_applicable: the law does not exist
/// for this configuration.
enum class LawStatus { enforced, reported, not_applicable };

std::string to_string(LawStatus s);

struct ConservationBudget {
  LawId law = LawId::mass;
  LawStatus status = LawStatus::enforced;
  std::string note;

  /// Per-cell (cell laws) or per-node (nodal laws) identity residuals.
  /// Nodal laws keep the boundary closure residuals at both ends, but these
  /// are excluded from per_cell_residual_max.
  std::vector<double> residuals;
  double per_cell_residual_max = 0.0;

  double density_sum_lo = 0.0;
  double density_sum_hi = 0.0;
  /// Flux values at s_0 and s_N (per unit time).
  double flux_left = 0.0;
  double flux_right = 0.0;
  /// tau * (flux_right - flux_left)
  double boundary_flux_sum = 0.0;
  /// density_sum_hi - density_sum_lo + boundary_flux_sum
  double signed_defect = 0.0;
  double identity_defect = 0.0;
  /// tau * sum(weight * residual) over all cells/nodes.
  double telescoped_residual_sum = 0.0;
  double relative_defect = 0.0;

  /// True when the law is not enforced, or both the per-cell and the global
  /// defects are within the given tolerances.
  bool within(double per_cell_tol, double global_rel_tol) const;
};

struct AuditOptions {
  /// Drop the tau^2/8 <u^2> correction from the second additional law.
  bool drop_additional_correction = false;
};

ConservationBudget audit_mass(const TwoLayerView& view, const SchemeParams& params);
ConservationBudget audit_energy(const TwoLayerView& view, const SchemeParams& params);
ConservationBudget audit_momentum(const TwoLayerView& view, const SchemeParams& params);
ConservationBudget audit_center_of_mass(const TwoLayerView& view, const SchemeParams& params);
ConservationBudget audit_additional_1(const TwoLayerView& view, const SchemeParams& params);
ConservationBudget audit_additional_2(const TwoLayerView& view, const SchemeParams& params,
                                      const AuditOptions& options = {});

ConservationBudget audit(LawId law, const TwoLayerView& view, const SchemeParams& params);
std::vector<ConservationBudget> audit_laws(const std::vector<LawId>& laws,
                                           const TwoLayerView& view, const SchemeParams& params);

/// max over cells of |eps_t + (P + omega) (1/rho)_t|.
double work_balance_defect(const TwoLayerView& view, const SchemeParams& params);

}  // namespace lagrange1d

#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lagrange1d/claws.hpp"
#include "lagrange1d/config.hpp"
#include "lagrange1d/scheme.hpp"

namespace lagrange1d {

enum class LogLevel { quiet, info, debug };

/// Reads LAGRANGE1D_LOG (quiet, info, debug); default info.
LogLevel log_level_from_env();

/// Exit codes of the batch driver.
inline constexpr int kExitOk = 0;
inline constexpr int kExitSolverFailure = 1;
inline constexpr int kExitBudgetViolation = 2;

struct RunOptions {
  /// Write snapshots and the ledger to config.output_dir.
  bool write_output = true;
  LogLevel log = LogLevel::quiet;
  /// Called after every accepted step with the step's view and budgets.
  std::function<void(const TwoLayerView&, const StepReport&,
                     const std::vector<ConservationBudget>&)>
      on_step;
};

struct RunOutcome {
  int exit_code = kExitOk;
  GridLayer final_layer;
  std::size_t steps = 0;
  std::size_t rejected_attempts = 0;
  std::size_t budget_violations = 0;
  double max_mass_consistency_defect = 0.0;
  std::vector<std::string> failures;
};

/// Advances the configured problem from t = 0 to t_end.
RunOutcome run_simulation(const RunConfig& config, const RunOptions& options = {});

enum class StudyKind { spatial, temporal };

struct StudyLevel {
  std::size_t cells = 0;
  double tau = 0.0;
  std::size_t steps = 0;
};

struct OrderReport {
  StudyKind kind = StudyKind::spatial;
  std::vector<StudyLevel> levels;
  /// Mass-weighted L2 norm of u differences between successive levels,
  /// sampled on the coarser level's nodes.
  std::vector<double> differences;
  std::vector<double> orders;
  bool exact = false;
  bool smooth = true;
  std::string warning;

  double observed_order() const { return orders.empty() ? 0.0 : orders.back(); }
};

/// Spatial: cells * 2^k with tau / 4^k. Temporal: fixed cells with tau / 2^k.
OrderReport convergence_study(const RunConfig& config, int levels, StudyKind kind);

nlohmann::json to_json(const OrderReport& report);

struct AuditResult {
  std::vector<ConservationBudget> budgets;
  std::vector<nlohmann::json> records;
  bool all_within = true;
};

/// Offline audit of two snapshot layers.
AuditResult audit_snapshots(const std::string& lo_location, const std::string& hi_location,
                            double tau, const RunConfig& config);

/// Audits one step and formats the ledger records; shared by the inline and
/// offline paths.
AuditResult audit_step(std::size_t step, const TwoLayerView& view, const RunConfig& config,
                       const SchemeParams& params);

}  // namespace lagrange1d

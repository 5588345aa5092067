#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lagrange1d/claws.hpp"
#include "lagrange1d/mesh.hpp"
#include "lagrange1d/scheme.hpp"
#include "lagrange1d/setup.hpp"

namespace lagrange1d {

struct TauSegment {
  double until = 0.0;
  double tau = 0.0;
};

struct Tolerances {
  /// Per-cell identity residuals must stay below this factor times newton_tol.
  double per_cell_factor = 100.0;
  double global_relative = 1e-10;
  double mass_consistency = 1e-10;
};

struct RunConfig {
  std::string problem = "uniform";
  ProblemOptions problem_options;
  /// Inline profile, used when problem == "inline".
  std::optional<EulerProfile> inline_profile;

  SchemeParams params;
  double t_end = 0.0;
  double tau = 0.0;
  std::vector<TauSegment> tau_schedule;
  std::size_t snapshot_every = 1;
  std::filesystem::path output_dir = "output";
  std::vector<LawId> audit = all_laws();
  Tolerances tolerances;
  int max_halvings = 0;

  /// Step length to use at time t.
  double tau_at(double t) const;
  double per_cell_tolerance() const { return tolerances.per_cell_factor * params.newton_tol; }
};

/// Parses a config document. Unknown keys anywhere are errors.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::filesystem::path& path);

/// The initial layer and the scheme parameters for a config.
struct InitialState {
  GridLayer layer;
  SchemeParams params;
  bool smooth = true;
};

InitialState build_initial_state(const RunConfig& config);

}  // namespace lagrange1d

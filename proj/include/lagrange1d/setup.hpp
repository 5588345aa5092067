#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lagrange1d/mesh.hpp"
#include "lagrange1d/scheme.hpp"
#include "lagrange1d/state.hpp"

namespace lagrange1d {

/// Eulerian initial data sampled on a set of Euler nodes: velocity at the
/// nodes, density and pressure at the cell midpoints.
struct EulerProfile {
  std::vector<double> r_nodes;
  std::vector<double> u_nodes;
  std::vector<double> rho_cells;
  std::vector<double> p_cells;
  double gamma = 1.4;

  /// Throws ConfigError on size mismatch, unordered nodes, rho <= 0 or a
  /// negative radius for n >= 1.
  void validate(int n) const;
};

using ProfileFunction = std::function<double(double)>;

/// Samples u at the nodes and rho, p at the Euler midpoints of each cell.
/// A discontinuous function takes the value of the side holding the midpoint.
EulerProfile sample_profile(std::vector<double> r_nodes, const ProfileFunction& rho,
                            const ProfileFunction& u, const ProfileFunction& p, double gamma);

/// s_0 = s_origin, s_{i+1} - s_i = rho_i (r_{i+1}^{n+1} - r_i^{n+1})/(n+1).
MassMesh mass_coordinate(const EulerProfile& profile, int n, double s_origin = 0.0);

/// Layer at t = 0 on the mass mesh of the profile; eps = p/((gamma-1) rho).
GridLayer make_initial_layer(const EulerProfile& profile, int n, double s_origin = 0.0);

/// Inverse of the cell volume relation: the r with V(r) - V(r_from) = volume.
double advance_radius(double r_from, double volume, int n);

/// Euler nodes starting at r_min such that each cell carries the mass of the
/// requested mass mesh under the density `rho` (evaluated at cell midpoints).
std::vector<double> place_nodes_by_mass(double r_min, const MassMesh& target,
                                        const ProfileFunction& rho, int n);

struct ProblemOptions {
  int n = 0;
  std::size_t cells = 50;
  std::optional<double> gamma;
  double amplitude = 0.05;
  std::optional<double> r_min;
  std::optional<double> r_max;
  /// When set, Euler nodes are placed to reproduce this mass mesh.
  std::optional<MassMesh> mesh;
};

struct Problem {
  std::string name;
  EulerProfile profile;
  SchemeParams params;
  bool smooth = true;
  double s_origin = 0.0;
};

/// One of: uniform, smooth_pulse, sod, expansion. Throws ConfigError for an
/// unknown name.
Problem problem_library(const std::string& name, const ProblemOptions& options);

std::vector<std::string> problem_names();

/// C^3 bump (1 - z^2)^4 on |z| < 1, zero elsewhere.
double smooth_bump(double z);

}  // namespace lagrange1d

#include "lagrange1d/setup.hpp"

#include <cmath>
#include <memory>

namespace lagrange1d {

void EulerProfile::validate(int n) const {
  if (r_nodes.size() < 3) throw ConfigError("profile needs at least 3 Euler nodes");
  const std::size_t cells = r_nodes.size() - 1;
  if (u_nodes.size() != r_nodes.size()) throw ConfigError("velocity samples must match nodes");
  if (rho_cells.size() != cells || p_cells.size() != cells) {
    throw ConfigError("density and pressure samples must match cells");
  }
  for (std::size_t i = 0; i < r_nodes.size(); ++i) {
    if (!std::isfinite(r_nodes[i]) || !std::isfinite(u_nodes[i])) {
      throw ConfigError("non-finite profile value at node " + std::to_string(i));
    }
    if (n >= 1 && r_nodes[i] < 0.0) throw ConfigError("negative radius in profile");
    if (i > 0 && !(r_nodes[i] > r_nodes[i - 1])) {
      throw ConfigError("Euler nodes not increasing at node " + std::to_string(i));
    }
  }
  for (std::size_t c = 0; c < cells; ++c) {
    if (!(rho_cells[c] > 0.0) || !std::isfinite(rho_cells[c])) {
      throw ConfigError("nonpositive density at cell " + std::to_string(c));
    }
    if (!std::isfinite(p_cells[c])) throw ConfigError("non-finite pressure in profile");
  }
}

EulerProfile sample_profile(std::vector<double> r_nodes, const ProfileFunction& rho,
                            const ProfileFunction& u, const ProfileFunction& p, double gamma) {
  EulerProfile out;
  out.gamma = gamma;
  out.r_nodes = std::move(r_nodes);
  const std::size_t nn = out.r_nodes.size();
  out.u_nodes.resize(nn);
  for (std::size_t i = 0; i < nn; ++i) out.u_nodes[i] = u(out.r_nodes[i]);
  if (nn >= 1) {
    out.rho_cells.resize(nn - 1);
    out.p_cells.resize(nn - 1);
    for (std::size_t c = 0; c + 1 < nn; ++c) {
      const double mid = 0.5 * (out.r_nodes[c] + out.r_nodes[c + 1]);
      out.rho_cells[c] = rho(mid);
      out.p_cells[c] = p(mid);
    }
  }
  return out;
}

MassMesh mass_coordinate(const EulerProfile& profile, int n, double s_origin) {
  profile.validate(n);
  std::vector<double> s(profile.r_nodes.size());
  s[0] = s_origin;
  for (std::size_t c = 0; c + 1 < s.size(); ++c) {
    const double volume =
        volume_potential(profile.r_nodes[c + 1], n) - volume_potential(profile.r_nodes[c], n);
    s[c + 1] = s[c] + profile.rho_cells[c] * volume;
  }
  return MassMesh(std::move(s));
}

GridLayer make_initial_layer(const EulerProfile& profile, int n, double s_origin) {
  if (profile.gamma == 0.0 || profile.gamma == 1.0 || !std::isfinite(profile.gamma)) {
    throw ConfigError("adiabatic exponent must be finite and differ from 0 and 1");
  }
  auto mesh = std::make_shared<const MassMesh>(mass_coordinate(profile, n, s_origin));
  GridLayer layer(mesh, 0.0);
  for (std::size_t i = 0; i < layer.nodes(); ++i) {
    layer.r[i] = profile.r_nodes[i];
    layer.u[i] = profile.u_nodes[i];
  }
  for (std::size_t c = 0; c < layer.cells(); ++c) {
    layer.rho[c] = profile.rho_cells[c];
    layer.p[c] = profile.p_cells[c];
    layer.eps[c] = layer.p[c] / ((profile.gamma - 1.0) * layer.rho[c]);
  }
  try {
    layer.validate(n);
  } catch (const LayerError& e) {
    throw ConfigError(std::string("initial layer invalid: ") + e.what());
  }
  return layer;
}

double advance_radius(double r_from, double volume, int n) {
  switch (n) {
    case 0: return r_from + volume;
    case 1: return std::sqrt(r_from * r_from + 2.0 * volume);
    case 2: return std::cbrt(r_from * r_from * r_from + 3.0 * volume);
    default: throw ConfigError("geometry exponent n must be 0, 1 or 2");
  }
}

std::vector<double> place_nodes_by_mass(double r_min, const MassMesh& target,
                                        const ProfileFunction& rho, int n) {
  std::vector<double> r(target.nodes());
  r[0] = r_min;
  for (std::size_t c = 0; c < target.cells(); ++c) {
    const double h = target.h(c);
    double next = advance_radius(r[c], h / rho(r[c]), n);
    for (int it = 0; it < 60; ++it) {
      const double updated = advance_radius(r[c], h / rho(0.5 * (r[c] + next)), n);
      if (updated == next) break;
      next = updated;
    }
    r[c + 1] = next;
  }
  return r;
}

double smooth_bump(double z) {
  if (std::abs(z) >= 1.0) return 0.0;
  const double w = 1.0 - z * z;
  return w * w * w * w;
}

std::vector<std::string> problem_names() { return {"uniform", "smooth_pulse", "sod", "expansion"}; }

namespace {

std::vector<double> equal_spacing(double a, double b, std::size_t cells) {
  std::vector<double> r(cells + 1);
  for (std::size_t i = 0; i <= cells; ++i) {
    r[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(cells);
  }
  r[cells] = b;
  return r;
}

/// Nodes carrying equal mass for constant density on [a, b].
std::vector<double> equal_mass_spacing(double a, double b, std::size_t cells, int n) {
  const double va = volume_potential(a, n);
  const double vb = volume_potential(b, n);
  std::vector<double> r(cells + 1);
  r[0] = a;
  for (std::size_t i = 1; i < cells; ++i) {
    const double frac = static_cast<double>(i) / static_cast<double>(cells);
    r[i] = advance_radius(a, frac * (vb - va), n);
  }
  r[cells] = b;
  return r;
}

}  // namespace

Problem problem_library(const std::string& name, const ProblemOptions& opt) {
  if (opt.n < 0 || opt.n > 2) throw ConfigError("geometry exponent n must be 0, 1 or 2");
  if (opt.cells < 2) throw ConfigError("a problem needs at least 2 cells");
  const int n = opt.n;

  Problem pb;
  pb.name = name;
  pb.params.n = n;
  pb.params.bc_left = BoundaryCondition::wall();
  pb.params.bc_right = BoundaryCondition::wall();

  ProfileFunction rho, u, p;
  double a = 0.0, b = 1.0;
  bool equal_mass = true;

  if (name == "uniform") {
    pb.params.gamma = opt.gamma.value_or(1.4);
    rho = [](double) { return 1.0; };
    u = [](double) { return 0.0; };
    p = [](double) { return 1.0; };
    a = opt.r_min.value_or(a);
    b = opt.r_max.value_or(b);
  } else if (name == "smooth_pulse") {
    pb.params.gamma = opt.gamma.value_or(pb.params.special_gamma());
    pb.params.eos_mode = EosMode::conservative;
    if (n >= 1) {
      a = 0.5;
      b = 1.5;
    }
    a = opt.r_min.value_or(a);
    b = opt.r_max.value_or(b);
    const double center = 0.5 * (a + b);
    const double width = 0.25 * (b - a);
    const double amp = opt.amplitude;
    rho = [](double) { return 1.0; };
    u = [=](double r) { return amp * smooth_bump((r - center) / width); };
    p = [=](double r) { return 1.0 + amp * smooth_bump((r - center) / width); };
  } else if (name == "sod") {
    pb.params.gamma = opt.gamma.value_or(1.4);
    pb.params.visc_nu = 1.5;
    pb.smooth = false;
    equal_mass = false;
    if (n >= 1) {
      a = 0.0;
      b = 1.0;
    }
    a = opt.r_min.value_or(a);
    b = opt.r_max.value_or(b);
    const double interface = 0.5 * (a + b);
    rho = [=](double r) { return r < interface ? 1.0 : 0.125; };
    u = [](double) { return 0.0; };
    p = [=](double r) { return r < interface ? 1.0 : 0.1; };
  } else if (name == "expansion") {
    pb.params.gamma = opt.gamma.value_or(1.4);
    pb.params.bc_right = BoundaryCondition::pressure_trace(0.4);
    pb.smooth = false;
    if (n >= 1) {
      a = 0.5;
      b = 1.5;
    }
    a = opt.r_min.value_or(a);
    b = opt.r_max.value_or(b);
    rho = [](double) { return 1.0; };
    u = [](double) { return 0.0; };
    p = [](double) { return 1.0; };
  } else {
    throw ConfigError("unknown problem '" + name + "'");
  }
  if (!(b > a) || (n >= 1 && a < 0.0)) throw ConfigError("invalid Euler domain");

  std::vector<double> nodes;
  if (opt.mesh) {
    nodes = place_nodes_by_mass(a, *opt.mesh, rho, n);
    pb.s_origin = opt.mesh->s(0);
  } else if (equal_mass) {
    nodes = equal_mass_spacing(a, b, opt.cells, n);
  } else {
    nodes = equal_spacing(a, b, opt.cells);
  }
  pb.profile = sample_profile(std::move(nodes), rho, u, p, pb.params.gamma);
  return pb;
}

}  // namespace lagrange1d

#include "lagrange1d/config.hpp"

#include <fstream>
#include <set>

namespace lagrange1d {

using nlohmann::json;

namespace {

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : obj.items()) {
    if (!ok.contains(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

template <class T>
T get(const json& obj, const char* key, const std::string& where) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + "." + key + ": " + e.what());
  }
}

template <class T>
void read_opt(const json& obj, const char* key, const std::string& where, T& out) {
  if (obj.contains(key)) out = get<T>(obj, key, where);
}

BoundaryCondition parse_bc(const json& j, const std::string& where) {
  check_keys(j, where, {"kind", "velocity", "pressure", "rate"});
  const auto kind = get<std::string>(j, "kind", where);
  if (kind == "wall") {
    if (j.contains("pressure") || j.contains("rate")) {
      throw ConfigError(where + ": wall boundary takes only 'velocity'");
    }
    double v = 0.0;
    read_opt(j, "velocity", where, v);
    return BoundaryCondition::wall(v);
  }
  if (kind == "pressure") {
    if (j.contains("velocity")) throw ConfigError(where + ": pressure boundary takes no velocity");
    double rate = 0.0;
    read_opt(j, "rate", where, rate);
    return BoundaryCondition::pressure_trace(get<double>(j, "pressure", where), rate);
  }
  throw ConfigError(where + ": boundary kind must be 'wall' or 'pressure'");
}

MassMesh parse_mesh(const json& j) {
  check_keys(j, "mesh", {"nodes", "s_min", "s_max", "cells"});
  if (j.contains("nodes")) {
    if (j.contains("s_min") || j.contains("s_max") || j.contains("cells")) {
      throw ConfigError("mesh: give either 'nodes' or (s_min, s_max, cells)");
    }
  }
  try {
    if (j.contains("nodes")) return build_mesh(get<std::vector<double>>(j, "nodes", "mesh"));
    return uniform_mesh(get<double>(j, "s_min", "mesh"), get<double>(j, "s_max", "mesh"),
                        get<std::size_t>(j, "cells", "mesh"));
  } catch (const MeshError& e) {
    throw ConfigError(std::string("mesh: ") + e.what());
  }
}

}  // namespace

double RunConfig::tau_at(double t) const {
  for (const auto& seg : tau_schedule) {
    if (t < seg.until) return seg.tau;
  }
  return tau;
}

RunConfig parse_config(const json& doc) {
  check_keys(doc, "config", {"problem", "mesh", "scheme", "t_end", "tau", "tau_schedule",
                             "snapshot_every", "output_dir", "audit", "tolerances",
                             "max_halvings"});
  RunConfig cfg;

  if (!doc.contains("problem")) throw ConfigError("config needs a 'problem' section");
  const json& pj = doc.at("problem");
  check_keys(pj, "problem", {"name", "cells", "amplitude", "r_min", "r_max", "r_nodes", "rho",
                             "u", "p"});
  cfg.problem = get<std::string>(pj, "name", "problem");
  read_opt(pj, "cells", "problem", cfg.problem_options.cells);
  read_opt(pj, "amplitude", "problem", cfg.problem_options.amplitude);
  if (pj.contains("r_min")) cfg.problem_options.r_min = get<double>(pj, "r_min", "problem");
  if (pj.contains("r_max")) cfg.problem_options.r_max = get<double>(pj, "r_max", "problem");
  const bool has_samples = pj.contains("r_nodes") || pj.contains("rho") || pj.contains("u") ||
                           pj.contains("p");
  if (cfg.problem == "inline") {
    EulerProfile prof;
    prof.r_nodes = get<std::vector<double>>(pj, "r_nodes", "problem");
    prof.rho_cells = get<std::vector<double>>(pj, "rho", "problem");
    prof.p_cells = get<std::vector<double>>(pj, "p", "problem");
    prof.u_nodes = get<std::vector<double>>(pj, "u", "problem");
    cfg.inline_profile = std::move(prof);
  } else if (has_samples) {
    throw ConfigError("problem: sample arrays are only valid for the 'inline' problem");
  }

  if (doc.contains("mesh")) {
    if (cfg.problem == "inline") throw ConfigError("mesh: inline profiles define their own mesh");
    cfg.problem_options.mesh = parse_mesh(doc.at("mesh"));
  }

  // Scheme defaults come from the problem template, then explicit keys win.
  json sj = doc.contains("scheme") ? doc.at("scheme") : json::object();
  check_keys(sj, "scheme", {"n", "gamma", "alpha", "eos_mode", "visc_nu", "newton_tol",
                            "newton_max_iter", "bc_left", "bc_right"});
  read_opt(sj, "n", "scheme", cfg.problem_options.n);
  if (sj.contains("gamma")) cfg.problem_options.gamma = get<double>(sj, "gamma", "scheme");
  if (cfg.problem != "inline") {
    cfg.params = problem_library(cfg.problem, cfg.problem_options).params;
  } else {
    cfg.params.n = cfg.problem_options.n;
    cfg.params.gamma = cfg.problem_options.gamma.value_or(1.4);
  }
  read_opt(sj, "alpha", "scheme", cfg.params.alpha);
  if (sj.contains("eos_mode")) {
    const auto mode = get<std::string>(sj, "eos_mode", "scheme");
    if (mode == "pointwise") {
      cfg.params.eos_mode = EosMode::pointwise;
    } else if (mode == "conservative") {
      cfg.params.eos_mode = EosMode::conservative;
    } else {
      throw ConfigError("scheme.eos_mode must be 'pointwise' or 'conservative'");
    }
  }
  read_opt(sj, "visc_nu", "scheme", cfg.params.visc_nu);
  read_opt(sj, "newton_tol", "scheme", cfg.params.newton_tol);
  read_opt(sj, "newton_max_iter", "scheme", cfg.params.newton_max_iter);
  if (sj.contains("bc_left")) cfg.params.bc_left = parse_bc(sj.at("bc_left"), "scheme.bc_left");
  if (sj.contains("bc_right")) {
    cfg.params.bc_right = parse_bc(sj.at("bc_right"), "scheme.bc_right");
  }
  cfg.params.validate();

  cfg.t_end = get<double>(doc, "t_end", "config");
  if (!(cfg.t_end > 0.0)) throw ConfigError("t_end must be positive");
  read_opt(doc, "tau", "config", cfg.tau);
  if (doc.contains("tau_schedule")) {
    if (!doc.at("tau_schedule").is_array()) throw ConfigError("tau_schedule must be a list");
    for (const auto& seg : doc.at("tau_schedule")) {
      check_keys(seg, "tau_schedule entry", {"until", "tau"});
      TauSegment s{get<double>(seg, "until", "tau_schedule"),
                   get<double>(seg, "tau", "tau_schedule")};
      if (!(s.tau > 0.0)) throw ConfigError("tau_schedule: tau must be positive");
      if (!cfg.tau_schedule.empty() && !(s.until > cfg.tau_schedule.back().until)) {
        throw ConfigError("tau_schedule: 'until' must increase");
      }
      cfg.tau_schedule.push_back(s);
    }
  }
  if (!(cfg.tau > 0.0) && cfg.tau_schedule.empty()) {
    throw ConfigError("give a positive 'tau' or a 'tau_schedule'");
  }
  if (!(cfg.tau > 0.0)) cfg.tau = cfg.tau_schedule.back().tau;

  if (doc.contains("snapshot_every")) {
    const auto every = get<long long>(doc, "snapshot_every", "config");
    if (every < 1) throw ConfigError("snapshot_every must be at least 1");
    cfg.snapshot_every = static_cast<std::size_t>(every);
  }
  if (doc.contains("output_dir")) cfg.output_dir = get<std::string>(doc, "output_dir", "config");
  if (doc.contains("audit")) {
    const json& a = doc.at("audit");
    if (a.is_string()) {
      if (a.get<std::string>() != "all") throw ConfigError("audit must be 'all' or a list of laws");
    } else {
      if (!a.is_array()) throw ConfigError("audit must be 'all' or a list of laws");
      cfg.audit.clear();
      for (const auto& name : a) {
        if (!name.is_string()) throw ConfigError("audit entries must be law names");
        const auto law = law_from_string(name.get<std::string>());
        if (!law) throw ConfigError("unknown law '" + name.get<std::string>() + "'");
        cfg.audit.push_back(*law);
      }
    }
  }
  if (doc.contains("tolerances")) {
    const json& tj = doc.at("tolerances");
    check_keys(tj, "tolerances", {"per_cell_factor", "global_relative", "mass_consistency"});
    read_opt(tj, "per_cell_factor", "tolerances", cfg.tolerances.per_cell_factor);
    read_opt(tj, "global_relative", "tolerances", cfg.tolerances.global_relative);
    read_opt(tj, "mass_consistency", "tolerances", cfg.tolerances.mass_consistency);
  }
  read_opt(doc, "max_halvings", "config", cfg.max_halvings);
  if (cfg.max_halvings < 0 || cfg.max_halvings > 10) {
    throw ConfigError("max_halvings must lie in [0, 10]");
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path.string() + ": " + e.what());
  }
  return parse_config(doc);
}

InitialState build_initial_state(const RunConfig& config) {
  InitialState out;
  out.params = config.params;
  if (config.inline_profile) {
    EulerProfile prof = *config.inline_profile;
    prof.gamma = config.params.gamma;
    out.layer = make_initial_layer(prof, config.params.n);
    out.smooth = false;
    return out;
  }
  ProblemOptions opts = config.problem_options;
  opts.gamma = config.params.gamma;
  const Problem pb = problem_library(config.problem, opts);
  out.layer = make_initial_layer(pb.profile, config.params.n, pb.s_origin);
  out.smooth = pb.smooth;
  return out;
}

}  // namespace lagrange1d

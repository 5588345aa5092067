#include "lagrange1d/driver.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>

#include "lagrange1d/snapshot.hpp"

namespace lagrange1d {

LogLevel log_level_from_env() {
  const char* v = std::getenv("LAGRANGE1D_LOG");
  if (v == nullptr) return LogLevel::info;
  const std::string s(v);
  if (s == "quiet" || s == "0") return LogLevel::quiet;
  if (s == "debug" || s == "2") return LogLevel::debug;
  return LogLevel::info;
}

AuditResult audit_step(std::size_t step, const TwoLayerView& view, const RunConfig& config,
                       const SchemeParams& params) {
  AuditResult out;
  out.budgets = audit_laws(config.audit, view, params);
  const double t_hi = view.lo.t + view.tau;
  for (const auto& b : out.budgets) {
    const bool ok = b.within(config.per_cell_tolerance(), config.tolerances.global_relative);
    out.all_within = out.all_within && ok;
    out.records.push_back(ledger_record(step, t_hi, view.tau, b, ok));
  }
  return out;
}

namespace {

class RunLoop {
 public:
  RunLoop(const RunConfig& config, const RunOptions& options)
      : config_(config), options_(options) {}

  RunOutcome run() {
    InitialState init = build_initial_state(config_);
    params_ = init.params;
    current_ = std::move(init.layer);
    outcome_.max_mass_consistency_defect = current_.mass_consistency_defect(params_.n);

    if (options_.write_output) {
      std::filesystem::create_directories(config_.output_dir);
      ledger_.open(config_.output_dir / "ledger.jsonl");
      if (!ledger_) throw SnapshotError("cannot write ledger in " + config_.output_dir.string());
      write_snapshot(0, 0.0);
    }

    const double t_end = config_.t_end;
    bool ok = true;
    while (ok && t_end - current_.t > 1e-12 * t_end) {
      double tau = config_.tau_at(current_.t);
      const double remaining = t_end - current_.t;
      if (tau >= remaining * (1.0 - 1e-9)) tau = remaining;
      ok = attempt(tau, 0);
    }

    if (options_.write_output && ok && outcome_.steps % config_.snapshot_every != 0) {
      write_snapshot(outcome_.steps, last_tau_);
    }
    if (!ok) {
      outcome_.exit_code = kExitSolverFailure;
    } else if (outcome_.budget_violations > 0) {
      outcome_.exit_code = kExitBudgetViolation;
    }
    outcome_.final_layer = current_;
    if (options_.write_output) write_summary();
    return outcome_;
  }

 private:
  bool attempt(double tau, int depth) {
    StepResult res = step(current_, tau, params_);
    if (options_.log == LogLevel::debug) {
      std::clog << "[lagrange1d] t=" << current_.t << " tau=" << tau
                << " iterations=" << res.report.iterations
                << " residual=" << res.report.final_residual_norm << '\n';
    }
    if (res.report.accepted) {
      accept(std::move(*res.hi), res.report, tau);
      return true;
    }
    ++outcome_.rejected_attempts;
    if (depth < config_.max_halvings) {
      if (options_.log != LogLevel::quiet) {
        std::clog << "[lagrange1d] step rejected at t=" << current_.t << " ("
                  << to_string(res.report.failure) << "), halving tau to " << 0.5 * tau << '\n';
      }
      return attempt(0.5 * tau, depth + 1) && attempt(0.5 * tau, depth + 1);
    }
    outcome_.failures.push_back("step " + std::to_string(outcome_.steps + 1) + " at t=" +
                                format_double(current_.t) + " rejected: " +
                                to_string(res.report.failure) + "; " + res.report.message);
    return false;
  }

  void accept(GridLayer hi, const StepReport& report, double tau) {
    ++outcome_.steps;
    const TwoLayerView view(current_, hi, tau);
    AuditResult audit = audit_step(outcome_.steps, view, config_, params_);
    if (!audit.all_within) {
      ++outcome_.budget_violations;
      for (const auto& b : audit.budgets) {
        if (!b.within(config_.per_cell_tolerance(), config_.tolerances.global_relative)) {
          outcome_.failures.push_back(
              "step " + std::to_string(outcome_.steps) + ": " + to_string(b.law) +
              " budget violated (per-cell " + format_double(b.per_cell_residual_max) +
              ", relative defect " + format_double(b.relative_defect) + ")");
        }
      }
    }
    const double defect = hi.mass_consistency_defect(params_.n);
    outcome_.max_mass_consistency_defect = std::max(outcome_.max_mass_consistency_defect, defect);
    if (defect > config_.tolerances.mass_consistency) {
      ++outcome_.budget_violations;
      outcome_.failures.push_back("step " + std::to_string(outcome_.steps) +
                                  ": mass-consistency defect " + format_double(defect));
    }
    if (options_.on_step) options_.on_step(view, report, audit.budgets);
    if (options_.write_output) {
      for (const auto& rec : audit.records) ledger_ << rec.dump() << '\n';
    }
    current_ = std::move(hi);
    last_tau_ = tau;
    if (options_.write_output && outcome_.steps % config_.snapshot_every == 0) {
      write_snapshot(outcome_.steps, tau);
    }
  }

  void write_snapshot(std::size_t step, double tau) {
    SnapshotMeta meta{step, current_.t, tau, params_.n, params_.gamma};
    lagrange1d::write_snapshot(snapshot_prefix(config_.output_dir, step, current_.t), current_,
                               meta);
  }

  void write_summary() {
    nlohmann::json j = {{"exit_code", outcome_.exit_code},
                        {"steps", outcome_.steps},
                        {"t_final", current_.t},
                        {"rejected_attempts", outcome_.rejected_attempts},
                        {"budget_violations", outcome_.budget_violations},
                        {"max_mass_consistency_defect", outcome_.max_mass_consistency_defect},
                        {"failures", outcome_.failures}};
    std::ofstream out(config_.output_dir / "summary.json");
    out << j.dump(2) << '\n';
  }

  const RunConfig& config_;
  const RunOptions& options_;
  SchemeParams params_;
  GridLayer current_;
  RunOutcome outcome_;
  std::ofstream ledger_;
  double last_tau_ = 0.0;
};

MassMesh bisect(const MassMesh& mesh) {
  std::vector<double> s;
  s.reserve(2 * mesh.cells() + 1);
  for (std::size_t i = 0; i < mesh.cells(); ++i) {
    s.push_back(mesh.s(i));
    s.push_back(mesh.midpoint(i));
  }
  s.push_back(mesh.s(mesh.cells()));
  return MassMesh(std::move(s));
}

}  // namespace

RunOutcome run_simulation(const RunConfig& config, const RunOptions& options) {
  return RunLoop(config, options).run();
}

OrderReport convergence_study(const RunConfig& config, int levels, StudyKind kind) {
  if (levels < 3) throw ConfigError("a convergence study needs at least 3 levels");
  if (config.inline_profile) throw ConfigError("convergence studies need a library problem");

  OrderReport report;
  report.kind = kind;
  std::vector<GridLayer> finals;
  RunConfig level_cfg = config;
  level_cfg.tau_schedule.clear();
  for (int k = 0; k < levels; ++k) {
    if (k > 0) {
      if (kind == StudyKind::spatial) {
        level_cfg.problem_options.cells *= 2;
        if (level_cfg.problem_options.mesh) {
          level_cfg.problem_options.mesh = bisect(*level_cfg.problem_options.mesh);
        }
        level_cfg.tau /= 4.0;
      } else {
        level_cfg.tau /= 2.0;
      }
    }
    RunOptions opts;
    opts.write_output = false;
    RunOutcome out = run_simulation(level_cfg, opts);
    if (out.exit_code == kExitSolverFailure) {
      throw std::runtime_error("convergence level " + std::to_string(k) + " failed: " +
                               (out.failures.empty() ? "" : out.failures.front()));
    }
    report.levels.push_back({out.final_layer.cells(), level_cfg.tau, out.steps});
    finals.push_back(std::move(out.final_layer));
  }
  report.smooth = build_initial_state(config).smooth;
  if (!report.smooth) report.warning = "problem is not smooth; the order estimate is void";

  const std::size_t stride = kind == StudyKind::spatial ? 2 : 1;
  for (std::size_t k = 0; k + 1 < finals.size(); ++k) {
    const GridLayer& coarse = finals[k];
    const GridLayer& fine = finals[k + 1];
    double sum = 0.0;
    for (std::size_t i = 0; i < coarse.nodes(); ++i) {
      const double d = coarse.u[i] - fine.u[stride * i];
      sum += coarse.mesh->nodal_mass(i) * d * d;
    }
    report.differences.push_back(std::sqrt(sum));
  }
  report.exact = true;
  for (double d : report.differences) report.exact = report.exact && d == 0.0;
  if (!report.exact) {
    for (std::size_t k = 0; k + 1 < report.differences.size(); ++k) {
      report.orders.push_back(std::log2(report.differences[k] / report.differences[k + 1]));
    }
  }
  return report;
}

nlohmann::json to_json(const OrderReport& report) {
  nlohmann::json levels = nlohmann::json::array();
  for (const auto& l : report.levels) {
    levels.push_back({{"cells", l.cells}, {"tau", l.tau}, {"steps", l.steps}});
  }
  return {{"kind", report.kind == StudyKind::spatial ? "spatial" : "temporal"},
          {"levels", levels},
          {"differences", report.differences},
          {"orders", report.orders},
          {"observed_order", report.observed_order()},
          {"exact", report.exact},
          {"smooth", report.smooth},
          {"warning", report.warning}};
}

AuditResult audit_snapshots(const std::string& lo_location, const std::string& hi_location,
                            double tau, const RunConfig& config) {
  if (!(tau > 0.0)) throw ConfigError("audit needs a positive tau");
  Snapshot lo = read_snapshot(resolve_snapshot(lo_location));
  Snapshot hi = read_snapshot(resolve_snapshot(hi_location));
  if (!(*lo.layer.mesh == *hi.layer.mesh)) {
    throw SnapshotError("snapshots live on different mass meshes");
  }
  hi.layer.mesh = lo.layer.mesh;
  const SchemeParams& params = config.params;
  lo.layer.validate(params.n);
  hi.layer.validate(params.n);
  const TwoLayerView view(lo.layer, hi.layer, tau);
  return audit_step(hi.meta.step, view, config, params);
}

}  // namespace lagrange1d

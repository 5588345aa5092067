// Batch driver for the conservative Lagrangian gas-dynamics solver.
//
//   lagrange1d run --config cfg.json [--out dir]
//   lagrange1d convergence --config cfg.json --levels 3 [--kind spatial|temporal]
//   lagrange1d audit --lo <snapshot> --hi <snapshot> --tau 0.01 --config cfg.json
//
// Log verbosity: LAGRANGE1D_LOG=quiet|info|debug.

#include <cmath>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "lagrange1d/driver.hpp"
#include "lagrange1d/snapshot.hpp"

using namespace lagrange1d;

namespace {

int do_run(const std::string& config_path, const std::string& out_dir) {
  RunConfig cfg = load_config(config_path);
  if (!out_dir.empty()) cfg.output_dir = out_dir;
  RunOptions opts;
  opts.log = log_level_from_env();
  const RunOutcome out = run_simulation(cfg, opts);
  if (opts.log != LogLevel::quiet) {
    std::cout << "steps: " << out.steps << "  t_final: " << format_double(out.final_layer.t)
              << "  budget violations: " << out.budget_violations
              << "  max mass-consistency defect: "
              << format_double(out.max_mass_consistency_defect) << '\n';
  }
  for (const auto& f : out.failures) std::cerr << "FAIL: " << f << '\n';
  return out.exit_code;
}

int do_convergence(const std::string& config_path, int levels, const std::string& kind_name,
                   const std::string& out_file) {
  const RunConfig cfg = load_config(config_path);
  StudyKind kind;
  if (kind_name == "spatial") {
    kind = StudyKind::spatial;
  } else if (kind_name == "temporal") {
    kind = StudyKind::temporal;
  } else {
    throw ConfigError("--kind must be 'spatial' or 'temporal'");
  }
  const OrderReport report = convergence_study(cfg, levels, kind);
  if (!report.warning.empty()) std::cerr << "warning: " << report.warning << '\n';
  const auto j = to_json(report);
  if (!out_file.empty()) {
    // gnuplot-friendly table: level, cells, tau, difference to next level
    std::ofstream dat(out_file);
    dat << "# level cells tau difference\n";
    for (std::size_t k = 0; k < report.levels.size(); ++k) {
      dat << k << ' ' << report.levels[k].cells << ' ' << format_double(report.levels[k].tau)
          << ' '
          << (k < report.differences.size() ? format_double(report.differences[k]) : "nan")
          << '\n';
    }
  }
  std::cout << j.dump(2) << '\n';
  if (report.exact) std::cout << "exact\n";
  return kExitOk;
}

int do_audit(const std::string& lo, const std::string& hi, double tau,
             const std::string& config_path) {
  const RunConfig cfg = load_config(config_path);
  const AuditResult res = audit_snapshots(lo, hi, tau, cfg);
  for (const auto& rec : res.records) std::cout << rec.dump() << '\n';
  return res.all_within ? kExitOk : kExitBudgetViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conservative implicit Lagrangian solver for 1D polytropic gas flows"};
  app.require_subcommand(1);

  std::string config_path, out_dir, kind = "spatial", out_file, lo, hi;
  int levels = 3;
  double tau = 0.0;

  auto* run = app.add_subcommand("run", "advance a configured problem to t_end");
  run->add_option("--config", config_path, "JSON config")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "output directory (overrides config)");

  auto* conv = app.add_subcommand("convergence", "self-convergence order study");
  conv->add_option("--config", config_path, "JSON config")->required()->check(CLI::ExistingFile);
  conv->add_option("--levels", levels, "refinement levels (>= 3)")->required();
  conv->add_option("--kind", kind, "spatial or temporal");
  conv->add_option("--data", out_file, "write a gnuplot data file");

  auto* aud = app.add_subcommand("audit", "audit two snapshots offline");
  aud->add_option("--lo", lo, "lower snapshot: prefix or nodes.csv,cells.csv")->required();
  aud->add_option("--hi", hi, "upper snapshot: prefix or nodes.csv,cells.csv")->required();
  aud->add_option("--tau", tau, "step length between the snapshots")->required();
  aud->add_option("--config", config_path, "JSON config")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return do_run(config_path, out_dir);
    if (*conv) return do_convergence(config_path, levels, kind, out_file);
    if (*aud) return do_audit(lo, hi, tau, config_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolverFailure;
  }
  return kExitOk;
}

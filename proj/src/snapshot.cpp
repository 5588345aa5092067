#include "lagrange1d/snapshot.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <vector>

namespace lagrange1d {

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  while (first < last && (*first == ' ' || *first == '+')) ++first;
  while (last > first && (last[-1] == ' ' || last[-1] == '\r')) --last;
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc() || res.ptr != last) {
    throw SnapshotError("cannot parse number '" + text + "'");
  }
  return value;
}

std::filesystem::path snapshot_prefix(const std::filesystem::path& dir, std::size_t step,
                                      double t) {
  char name[96];
  std::snprintf(name, sizeof(name), "snap_%06zu_t%.6e", step, t);
  return dir / name;
}

SnapshotPaths snapshot_paths(const std::filesystem::path& prefix) {
  const std::string base = prefix.string();
  return {base + "_nodes.csv", base + "_cells.csv", base + "_meta.json"};
}

SnapshotPaths resolve_snapshot(const std::string& location) {
  const auto comma = location.find(',');
  if (comma == std::string::npos) return snapshot_paths(location);
  SnapshotPaths paths;
  paths.nodes = location.substr(0, comma);
  paths.cells = location.substr(comma + 1);
  std::string nodes = paths.nodes.string();
  const std::string suffix = "_nodes.csv";
  if (nodes.size() > suffix.size() && nodes.ends_with(suffix)) {
    paths.meta = nodes.substr(0, nodes.size() - suffix.size()) + "_meta.json";
  }
  return paths;
}

void write_snapshot(const std::filesystem::path& prefix, const GridLayer& layer,
                    const SnapshotMeta& meta) {
  const auto paths = snapshot_paths(prefix);
  if (prefix.has_parent_path()) std::filesystem::create_directories(prefix.parent_path());
  {
    std::ofstream out(paths.nodes);
    if (!out) throw SnapshotError("cannot write " + paths.nodes.string());
    out << "i,s,r,u\n";
    for (std::size_t i = 0; i < layer.nodes(); ++i) {
      out << i << ',' << format_double(layer.mesh->s(i)) << ',' << format_double(layer.r[i])
          << ',' << format_double(layer.u[i]) << '\n';
    }
  }
  {
    std::ofstream out(paths.cells);
    if (!out) throw SnapshotError("cannot write " + paths.cells.string());
    out << "i,s_mid,rho,p,eps\n";
    for (std::size_t c = 0; c < layer.cells(); ++c) {
      out << c << ',' << format_double(layer.mesh->midpoint(c)) << ','
          << format_double(layer.rho[c]) << ',' << format_double(layer.p[c]) << ','
          << format_double(layer.eps[c]) << '\n';
    }
  }
  nlohmann::json j = {{"step", meta.step}, {"t", meta.t},       {"tau", meta.tau},
                      {"n", meta.n},       {"gamma", meta.gamma}, {"cells", layer.cells()}};
  std::ofstream out(paths.meta);
  if (!out) throw SnapshotError("cannot write " + paths.meta.string());
  out << j.dump(2) << '\n';
}

namespace {

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path,
                                               std::size_t columns) {
  std::ifstream in(path);
  if (!in) throw SnapshotError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw SnapshotError(path.string() + " is empty");
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != columns) {
      throw SnapshotError(path.string() + ": expected " + std::to_string(columns) +
                          " columns, got " + std::to_string(fields.size()));
    }
    if (static_cast<std::size_t>(parse_double(fields[0])) != rows.size()) {
      throw SnapshotError(path.string() + ": rows out of order");
    }
    rows.push_back(std::move(fields));
  }
  return rows;
}

}  // namespace

Snapshot read_snapshot(const SnapshotPaths& paths) {
  const auto node_rows = read_csv(paths.nodes, 4);
  const auto cell_rows = read_csv(paths.cells, 5);
  if (node_rows.size() != cell_rows.size() + 1) {
    throw SnapshotError("node and cell tables disagree on the cell count");
  }
  std::vector<double> s(node_rows.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = parse_double(node_rows[i][1]);

  Snapshot snap;
  if (!paths.meta.empty() && std::filesystem::exists(paths.meta)) {
    std::ifstream in(paths.meta);
    const auto j = nlohmann::json::parse(in);
    snap.meta.step = j.at("step").get<std::size_t>();
    snap.meta.t = j.at("t").get<double>();
    snap.meta.tau = j.at("tau").get<double>();
    snap.meta.n = j.at("n").get<int>();
    snap.meta.gamma = j.at("gamma").get<double>();
  }
  snap.layer = GridLayer(std::make_shared<const MassMesh>(std::move(s)), snap.meta.t);
  for (std::size_t i = 0; i < node_rows.size(); ++i) {
    snap.layer.r[i] = parse_double(node_rows[i][2]);
    snap.layer.u[i] = parse_double(node_rows[i][3]);
  }
  for (std::size_t c = 0; c < cell_rows.size(); ++c) {
    snap.layer.rho[c] = parse_double(cell_rows[c][2]);
    snap.layer.p[c] = parse_double(cell_rows[c][3]);
    snap.layer.eps[c] = parse_double(cell_rows[c][4]);
  }
  return snap;
}

nlohmann::json ledger_record(std::size_t step, double t, double tau,
                             const ConservationBudget& b, bool within_tolerance) {
  return {{"step", step},
          {"t", t},
          {"tau", tau},
          {"law", to_string(b.law)},
          {"status", to_string(b.status)},
          {"applicable", b.status != LawStatus::not_applicable},
          {"note", b.note},
          {"per_cell_max_residual", b.per_cell_residual_max},
          {"density_sum_lo", b.density_sum_lo},
          {"density_sum_hi", b.density_sum_hi},
          {"flux_left", b.flux_left},
          {"flux_right", b.flux_right},
          {"boundary_flux_sum", b.boundary_flux_sum},
          {"identity_defect", b.identity_defect},
          {"relative_defect", b.relative_defect},
          {"telescoped_residual_sum", b.telescoped_residual_sum},
          {"within_tolerance", within_tolerance}};
}

}  // namespace lagrange1d

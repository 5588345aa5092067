#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "lagrange1d/claws.hpp"
#include "lagrange1d/state.hpp"

namespace lagrange1d {

class SnapshotError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest decimal string that reads back to the same double.
std::string format_double(double x);
double parse_double(const std::string& text);

struct SnapshotMeta {
  std::size_t step = 0;
  double t = 0.0;
  /// Step length that produced this layer (0 for the initial layer).
  double tau = 0.0;
  int n = 0;
  double gamma = 0.0;
};

struct SnapshotPaths {
  std::filesystem::path nodes, cells, meta;
};

/// <dir>/snap_<step>_t<time>; the three files append _nodes.csv, _cells.csv
/// and _meta.json.
std::filesystem::path snapshot_prefix(const std::filesystem::path& dir, std::size_t step,
                                      double t);
SnapshotPaths snapshot_paths(const std::filesystem::path& prefix);

/// Accepts either a snapshot prefix or "nodes.csv,cells.csv".
SnapshotPaths resolve_snapshot(const std::string& location);

void write_snapshot(const std::filesystem::path& prefix, const GridLayer& layer,
                    const SnapshotMeta& meta);

struct Snapshot {
  GridLayer layer;
  SnapshotMeta meta;
};

Snapshot read_snapshot(const SnapshotPaths& paths);

/// One ledger record per (step, law).
nlohmann::json ledger_record(std::size_t step, double t, double tau,
                             const ConservationBudget& budget, bool within_tolerance);

}  // namespace lagrange1d

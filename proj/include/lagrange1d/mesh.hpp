#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lagrange1d {

class MeshError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Fixed mass-Lagrangian mesh: nodes s_0 < s_1 < ... < s_N.
///
/// Cell widths h_i = s_{i+1} - s_i are always derived from the node array.
/// The mesh is immutable once built.
class MassMesh {
 public:
  /// Throws MeshError naming the offending index if `s` is not strictly
  /// increasing or has fewer than three entries.
  explicit MassMesh(std::vector<double> s);

  std::size_t cells() const { return s_.size() - 1; }
  std::size_t nodes() const { return s_.size(); }

  std::span<const double> s() const { return s_; }
  double s(std::size_t i) const { return s_[i]; }
  double h(std::size_t i) const { return s_[i + 1] - s_[i]; }
  double midpoint(std::size_t i) const { return 0.5 * (s_[i] + s_[i + 1]); }

  std::vector<double> widths() const;
  std::vector<double> midpoints() const;

  /// Half-sum of the widths adjacent to node i; at the end nodes only the
  /// single adjacent cell contributes half its width.
  double nodal_mass(std::size_t i) const;

  bool operator==(const MassMesh& other) const = default;

 private:
  std::vector<double> s_;
};

MassMesh build_mesh(std::vector<double> s);
MassMesh uniform_mesh(double s_min, double s_max, std::size_t cells);

/// Time bookkeeping for one step from t to t + tau.
struct TimeLayer {
  double t = 0.0;
  double tau = 0.0;

  TimeLayer(double t_, double tau_);

  double t_next() const { return t + tau; }
  /// t^{(0.5)}
  double t_mid() const { return t + 0.5 * tau; }
  /// (t^2)^{(0.5)}
  double t_sq_mid() const { return 0.5 * (t * t + t_next() * t_next()); }
};

}  // namespace lagrange1d

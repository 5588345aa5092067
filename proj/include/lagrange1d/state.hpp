#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "lagrange1d/mesh.hpp"

namespace lagrange1d {

/// Grid function with a placement tag. Nodal and cell fields are distinct
/// types, so an operator expecting one rejects the other at compile time.
template <class Placement>
class Field {
 public:
  Field() = default;
  explicit Field(std::size_t size, double value = 0.0) : v_(size, value) {}
  explicit Field(std::vector<double> values) : v_(std::move(values)) {}

  std::size_t size() const { return v_.size(); }
  double& operator[](std::size_t i) { return v_[i]; }
  double operator[](std::size_t i) const { return v_[i]; }
  std::span<const double> values() const { return v_; }
  std::span<double> values() { return v_; }
  auto begin() const { return v_.begin(); }
  auto end() const { return v_.end(); }

  bool operator==(const Field&) const = default;

 private:
  std::vector<double> v_;
};

struct NodePlacement {};
struct CellPlacement {};
using NodalField = Field<NodePlacement>;
using CellField = Field<CellPlacement>;

class LayerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// All field values on one time layer: r, u at nodes; rho, p, eps at cells.
struct GridLayer {
  std::shared_ptr<const MassMesh> mesh;
  double t = 0.0;
  NodalField r;
  NodalField u;
  CellField rho;
  CellField p;
  CellField eps;

  GridLayer() = default;
  GridLayer(std::shared_ptr<const MassMesh> mesh_, double t_);

  std::size_t cells() const { return mesh->cells(); }
  std::size_t nodes() const { return mesh->nodes(); }

  /// Throws LayerError on wrong sizes, non-finite values, rho <= 0, an
  /// unordered r, or (n >= 1) a negative r.
  void validate(int n) const;

  /// max_i |(r_{i+1}^{n+1} - r_i^{n+1})/(n+1) - h_i/rho_i| / (h_i/rho_i)
  double mass_consistency_defect(int n) const;

  bool operator==(const GridLayer& other) const;
};

/// Lower and upper time layers of one step on a common mesh.
struct TwoLayerView {
  const GridLayer& lo;
  const GridLayer& hi;
  double tau;

  TwoLayerView(const GridLayer& lo_, const GridLayer& hi_, double tau_);

  const MassMesh& mesh() const { return *lo.mesh; }
};

// Discrete operators on the staggered mesh.

inline double time_diff(double lo, double hi, double tau) { return (hi - lo) / tau; }

/// y^{(alpha)} = alpha*hi + (1-alpha)*lo. Throws std::invalid_argument for
/// alpha outside [0, 1].
double weighted(double lo, double hi, double alpha);

/// (f_{i+1} - f_i)/h_i for the cell between nodes i and i+1.
double forward_s(const NodalField& f, const MassMesh& mesh, std::size_t cell);

/// (g_{i+1/2} - g_{i-1/2}) / (0.5 (h_i + h_{i-1})) at interior node i.
double backward_s(const CellField& g, const MassMesh& mesh, std::size_t node);

/// Width-weighted linear interpolation of a cell field to interior node i.
double interp_nodal_pressure(const CellField& p, const MassMesh& mesh, std::size_t node);

/// <f> over the cell between nodes i and i+1, f given as a callable of the
/// node index.
template <class F>
double cell_average(F&& f, std::size_t cell) {
  return 0.5 * (f(cell) + f(cell + 1));
}

/// x^{n+1}/(n+1)
double volume_potential(double r, int n);

}  // namespace lagrange1d

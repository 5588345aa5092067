#include "lagrange1d/state.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lagrange1d {

GridLayer::GridLayer(std::shared_ptr<const MassMesh> mesh_, double t_)
    : mesh(std::move(mesh_)),
      t(t_),
      r(mesh->nodes()),
      u(mesh->nodes()),
      rho(mesh->cells()),
      p(mesh->cells()),
      eps(mesh->cells()) {}

void GridLayer::validate(int n) const {
  if (!mesh) throw LayerError("layer has no mesh");
  const std::size_t nn = mesh->nodes();
  const std::size_t nc = mesh->cells();
  if (r.size() != nn || u.size() != nn) throw LayerError("nodal field size mismatch");
  if (rho.size() != nc || p.size() != nc || eps.size() != nc) {
    throw LayerError("cell field size mismatch");
  }
  for (std::size_t i = 0; i < nn; ++i) {
    if (!std::isfinite(r[i]) || !std::isfinite(u[i])) {
      throw LayerError("non-finite nodal value at node " + std::to_string(i));
    }
    if (n >= 1 && r[i] < 0.0) throw LayerError("negative radius at node " + std::to_string(i));
    if (i > 0 && !(r[i] > r[i - 1])) {
      throw LayerError("positions not strictly increasing at node " + std::to_string(i));
    }
  }
  for (std::size_t i = 0; i < nc; ++i) {
    if (!std::isfinite(rho[i]) || !std::isfinite(p[i]) || !std::isfinite(eps[i])) {
      throw LayerError("non-finite cell value at cell " + std::to_string(i));
    }
    if (!(rho[i] > 0.0)) throw LayerError("nonpositive density at cell " + std::to_string(i));
  }
}

double volume_potential(double r, int n) {
  switch (n) {
    case 0: return r;
    case 1: return 0.5 * r * r;
    case 2: return r * r * r / 3.0;
    default: throw std::invalid_argument("geometry exponent must be 0, 1 or 2");
  }
}

double GridLayer::mass_consistency_defect(int n) const {
  double worst = 0.0;
  for (std::size_t i = 0; i < cells(); ++i) {
    const double volume = mesh->h(i) / rho[i];
    const double from_r = volume_potential(r[i + 1], n) - volume_potential(r[i], n);
    worst = std::max(worst, std::abs(from_r - volume) / volume);
  }
  return worst;
}

bool GridLayer::operator==(const GridLayer& other) const {
  return *mesh == *other.mesh && t == other.t && r == other.r && u == other.u &&
         rho == other.rho && p == other.p && eps == other.eps;
}

TwoLayerView::TwoLayerView(const GridLayer& lo_, const GridLayer& hi_, double tau_)
    : lo(lo_), hi(hi_), tau(tau_) {
  if (!(tau > 0.0)) throw std::invalid_argument("time step must be positive");
  if (lo.mesh != hi.mesh && !(*lo.mesh == *hi.mesh)) {
    throw LayerError("layers live on different meshes");
  }
}

double weighted(double lo, double hi, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("time weight must lie in [0, 1]");
  }
  return alpha * hi + (1.0 - alpha) * lo;
}

double forward_s(const NodalField& f, const MassMesh& mesh, std::size_t cell) {
  if (cell >= mesh.cells()) throw std::out_of_range("forward_s: cell index out of range");
  return (f[cell + 1] - f[cell]) / mesh.h(cell);
}

double backward_s(const CellField& g, const MassMesh& mesh, std::size_t node) {
  if (node == 0 || node >= mesh.cells()) {
    throw std::out_of_range("backward_s: only interior nodes are supported");
  }
  return (g[node] - g[node - 1]) / (0.5 * (mesh.h(node) + mesh.h(node - 1)));
}

double interp_nodal_pressure(const CellField& p, const MassMesh& mesh, std::size_t node) {
  if (node == 0 || node >= mesh.cells()) {
    throw std::out_of_range("interp_nodal_pressure: only interior nodes are supported");
  }
  const double h_left = mesh.h(node - 1);
  const double h_right = mesh.h(node);
  return (h_right * p[node - 1] + h_left * p[node]) / (h_left + h_right);
}

}  // namespace lagrange1d

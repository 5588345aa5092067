#include "lagrange1d/mesh.hpp"

#include <cmath>

namespace lagrange1d {

MassMesh::MassMesh(std::vector<double> s) : s_(std::move(s)) {
  if (s_.size() < 3) {
    throw MeshError("mass mesh needs at least 3 nodes, got " + std::to_string(s_.size()));
  }
  for (std::size_t i = 0; i < s_.size(); ++i) {
    if (!std::isfinite(s_[i])) {
      throw MeshError("mass mesh node " + std::to_string(i) + " is not finite");
    }
    if (i > 0 && !(s_[i] > s_[i - 1])) {
      throw MeshError("mass mesh not strictly increasing at node " + std::to_string(i));
    }
  }
}

std::vector<double> MassMesh::widths() const {
  std::vector<double> out(cells());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = h(i);
  return out;
}

std::vector<double> MassMesh::midpoints() const {
  std::vector<double> out(cells());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = midpoint(i);
  return out;
}

double MassMesh::nodal_mass(std::size_t i) const {
  if (i == 0) return 0.5 * h(0);
  if (i == cells()) return 0.5 * h(cells() - 1);
  return 0.5 * (h(i - 1) + h(i));
}

MassMesh build_mesh(std::vector<double> s) { return MassMesh(std::move(s)); }

MassMesh uniform_mesh(double s_min, double s_max, std::size_t cells) {
  if (cells < 2) throw MeshError("uniform mesh needs at least 2 cells");
  if (!(s_max > s_min)) throw MeshError("uniform mesh needs s_max > s_min");
  std::vector<double> s(cells + 1);
  const double step = (s_max - s_min) / static_cast<double>(cells);
  for (std::size_t i = 0; i <= cells; ++i) s[i] = s_min + step * static_cast<double>(i);
  s[cells] = s_max;
  return MassMesh(std::move(s));
}

TimeLayer::TimeLayer(double t_, double tau_) : t(t_), tau(tau_) {
  if (!(tau > 0.0)) throw std::invalid_argument("time step must be positive");
}

}  // namespace lagrange1d

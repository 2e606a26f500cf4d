#include "zfskit/grid.hpp"

#include <algorithm>
#include <cmath>

#include "zfskit/error.hpp"

namespace zfs {

std::size_t GridGeometry::size() const {
  return static_cast<std::size_t>(shape[0]) * static_cast<std::size_t>(shape[1]) * static_cast<std::size_t>(shape[2]);
}

double GridGeometry::cell_volume() const { return std::abs(cell.determinant()); }

double GridGeometry::voxel_volume() const { return cell_volume() / static_cast<double>(size()); }

Matrix3 GridGeometry::steps() const {
  Matrix3 s = cell;
  for (int d = 0; d < 3; ++d) s.row(d) /= static_cast<double>(shape[d]);
  return s;
}

Vector3 GridGeometry::position(int i, int j, int k) const {
  return origin + (static_cast<double>(i) / shape[0]) * cell.row(0).transpose() +
         (static_cast<double>(j) / shape[1]) * cell.row(1).transpose() +
         (static_cast<double>(k) / shape[2]) * cell.row(2).transpose();
}

double GridGeometry::min_width() const {
  const double vol = cell_volume();
  double w = INFINITY;
  for (int d = 0; d < 3; ++d) {
    const Vector3 a = cell.row((d + 1) % 3);
    const Vector3 b = cell.row((d + 2) % 3);
    w = std::min(w, vol / a.cross(b).norm());
  }
  return w;
}

void GridGeometry::validate() const {
  for (int d = 0; d < 3; ++d) {
    if (shape[d] <= 0) fail(ErrorKind::InvalidInput, "grid shape must be positive along every axis");
  }
  if (!cell.allFinite() || !origin.allFinite()) fail(ErrorKind::InvalidInput, "grid cell has non-finite entries");
  const double scale = cell.rowwise().norm().prod();
  if (!(cell_volume() > 1e-12 * scale)) fail(ErrorKind::InvalidInput, "grid cell is singular");
}

bool operator==(const GridGeometry& a, const GridGeometry& b) {
  return a.shape == b.shape && a.cell == b.cell && a.origin == b.origin && a.periodic == b.periodic;
}

double GridOrbital::norm_squared() const {
  double s = 0.0;
  for (double v : values) s += v * v;
  return s * geometry.voxel_volume();
}

GridOrbital normalize(const GridOrbital& orbital) {
  orbital.geometry.validate();
  if (orbital.values.size() != orbital.geometry.size()) {
    fail(ErrorKind::InvalidInput, "grid orbital has " + std::to_string(orbital.values.size()) + " values for " +
                                      std::to_string(orbital.geometry.size()) + " grid points");
  }
  const double n2 = orbital.norm_squared();
  if (!(n2 > 0.0) || !std::isfinite(n2)) fail(ErrorKind::InvalidInput, "cannot normalize a zero grid orbital");
  GridOrbital out = orbital;
  const double s = 1.0 / std::sqrt(n2);
  for (double& v : out.values) v *= s;
  return out;
}

GridOrbital sample(const GaussianOrbital& orbital, const GridGeometry& geometry) {
  geometry.validate();
  GridOrbital out;
  out.geometry = geometry;
  out.values.resize(geometry.size());
  std::size_t idx = 0;
  for (int i = 0; i < geometry.shape[0]; ++i)
    for (int j = 0; j < geometry.shape[1]; ++j)
      for (int k = 0; k < geometry.shape[2]; ++k) out.values[idx++] = orbital.value_at(geometry.position(i, j, k));
  return out;
}

GridGeometry bounding_box(const std::vector<Vector3>& centers, double padding, int points) {
  if (centers.empty()) fail(ErrorKind::InvalidInput, "bounding_box: no centers");
  Vector3 lo = centers.front();
  Vector3 hi = centers.front();
  for (const auto& c : centers) {
    lo = lo.cwiseMin(c);
    hi = hi.cwiseMax(c);
  }
  lo.array() -= padding;
  hi.array() += padding;
  GridGeometry g;
  g.shape = {points, points, points};
  g.origin = lo;
  g.periodic = false;
  // the box spans points-1 intervals from lo to hi inclusive
  const Vector3 extent = hi - lo;
  for (int d = 0; d < 3; ++d) g.cell(d, d) = extent[d] * points / std::max(points - 1, 1);
  g.validate();
  return g;
}

GridGeometry cubic_cell(double edge, int points) {
  GridGeometry g;
  g.shape = {points, points, points};
  g.cell = edge * Matrix3::Identity();
  g.periodic = true;
  g.validate();
  return g;
}

}  // namespace zfs

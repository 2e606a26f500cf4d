#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "zfskit/gaussian_orbital.hpp"

namespace zfs {

/// Uniform grid spanning a parallelepiped cell. `cell` holds the three full
/// lattice vectors as rows (Bohr); sample (i,j,k) sits at
/// origin + i/n1 a1 + j/n2 a2 + k/n3 a3. Values are stored with k fastest,
/// which is the cube-file order.
struct GridGeometry {
  std::array<int, 3> shape{0, 0, 0};
  Matrix3 cell = Matrix3::Zero();
  Vector3 origin = Vector3::Zero();
  bool periodic = true;

  std::size_t size() const;
  double cell_volume() const;
  double voxel_volume() const;
  /// Voxel step vectors as rows.
  Matrix3 steps() const;
  Vector3 position(int i, int j, int k) const;
  /// Shortest distance between opposite cell faces.
  double min_width() const;

  /// Throws InvalidInput for non-positive shape or a singular cell.
  void validate() const;
};

bool operator==(const GridGeometry& a, const GridGeometry& b);

struct CubeAtom {
  int atomic_number = 0;
  double charge = 0.0;
  Vector3 position = Vector3::Zero();  // Bohr
};

/// Atom list and comment lines carried through from a cube file for reports.
struct CubeMetadata {
  std::string comment1;
  std::string comment2;
  std::vector<CubeAtom> atoms;
};

struct GridOrbital {
  GridGeometry geometry;
  std::vector<double> values;
  CubeMetadata metadata;

  double norm_squared() const;
};

/// Throws InvalidInput when the field is identically zero.
GridOrbital normalize(const GridOrbital& orbital);

/// Samples an analytic orbital at the grid points (no renormalization).
GridOrbital sample(const GaussianOrbital& orbital, const GridGeometry& geometry);

/// Orthorhombic non-periodic box around the given centers, padded by `padding` Bohr
/// on every side, with `points` samples per axis.
GridGeometry bounding_box(const std::vector<Vector3>& centers, double padding, int points);

/// Periodic cubic cell of edge `edge` with `points` samples per axis, origin at 0.
GridGeometry cubic_cell(double edge, int points);

}  // namespace zfs

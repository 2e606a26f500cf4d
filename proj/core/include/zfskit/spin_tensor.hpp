#pragma once

#include <array>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "zfskit/units.hpp"

namespace zfs {

using Matrix3 = Eigen::Matrix3d;
using Vector3 = Eigen::Vector3d;

/// Symmetric, traceless 3x3 energy tensor (a coupling tensor d or a ZFS tensor D).
///
/// Construction always goes through traceless_project, so every instance
/// satisfies the symmetry and trace invariants up to rounding. Arithmetic
/// between tensors requires matching units.
class SpinTensor {
 public:
  SpinTensor() : m_(Matrix3::Zero()) {}

  const Matrix3& matrix() const { return m_; }
  EnergyUnit unit() const { return unit_; }
  double operator()(int a, int b) const { return m_(a, b); }

  /// Same physical tensor expressed in another unit.
  SpinTensor in(EnergyUnit unit) const;

  double max_abs() const { return m_.cwiseAbs().maxCoeff(); }
  double trace() const { return m_.trace(); }

  /// Row-major components, the serialized form.
  std::array<double, 9> row_major() const;

  SpinTensor& operator+=(const SpinTensor& other);
  SpinTensor& operator-=(const SpinTensor& other);
  SpinTensor& operator*=(double s);
  SpinTensor& operator/=(double s);

  friend SpinTensor operator+(SpinTensor a, const SpinTensor& b) { return a += b; }
  friend SpinTensor operator-(SpinTensor a, const SpinTensor& b) { return a -= b; }
  friend SpinTensor operator-(SpinTensor a) { return a *= -1.0; }
  friend SpinTensor operator*(SpinTensor a, double s) { return a *= s; }
  friend SpinTensor operator*(double s, SpinTensor a) { return a *= s; }
  friend SpinTensor operator/(SpinTensor a, double s) { return a /= s; }

 private:
  friend SpinTensor traceless_project(const Matrix3& matrix, EnergyUnit unit);
  SpinTensor(const Matrix3& m, EnergyUnit unit) : m_(m), unit_(unit) {}

  Matrix3 m_;
  EnergyUnit unit_ = EnergyUnit::MHz;
};

/// (M + M^T)/2 - tr(M)/3 * I. Throws InvalidInput on non-finite entries.
SpinTensor traceless_project(const Matrix3& matrix, EnergyUnit unit = EnergyUnit::MHz);

/// Principal-axis description of a SpinTensor.
///
/// Convention: z is the eigenvector with the largest |eigenvalue|; x and y are
/// ordered so that E >= 0. The sign of D is kept. `axes` holds x, y, z as rows
/// and is right-handed.
struct ZfsParameters {
  double D = 0.0;
  double E = 0.0;
  Matrix3 axes = Matrix3::Identity();
  Vector3 eigenvalues = Vector3::Zero();  // (xx, yy, zz) in the principal frame
  EnergyUnit unit = EnergyUnit::MHz;
  bool degenerate = false;                // all eigenvalues zero; axes arbitrary
};

ZfsParameters extract_parameters(const SpinTensor& t);

/// Orthogonal point-group operations used for tensor averaging. Closure is
/// not required.
class SymmetryGroup {
 public:
  /// Throws InvalidInput unless every op satisfies R^T R = I within 1e-12.
  explicit SymmetryGroup(std::vector<Matrix3> ops);

  static SymmetryGroup identity();
  /// C3v about `axis`: rotations by 0, 120, 240 degrees and three vertical mirrors.
  static SymmetryGroup c3v(const Vector3& axis = Vector3::UnitZ());
  /// C3 subgroup (rotations only) about `axis`.
  static SymmetryGroup c3(const Vector3& axis = Vector3::UnitZ());

  const std::vector<Matrix3>& ops() const { return ops_; }
  std::size_t order() const { return ops_.size(); }

 private:
  std::vector<Matrix3> ops_;
};

bool is_orthogonal(const Matrix3& r, double tol = 1e-12);

/// Rotation by `angle` (radians) about the unit vector along `axis`.
Matrix3 axis_angle(const Vector3& axis, double angle);

/// R T R^T. Throws InvalidInput for non-orthogonal R.
SpinTensor rotate(const SpinTensor& t, const Matrix3& r);

/// (1/(n |g|)) sum_i sum_R R T_i R^T. With non-empty `weights` the plain mean
/// over tensors is replaced by the normalized weighted mean.
SpinTensor symmetry_average(std::span<const SpinTensor> tensors, const SymmetryGroup& g,
                            std::span<const double> weights = {});

}  // namespace zfs

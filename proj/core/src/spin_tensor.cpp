#include "zfskit/spin_tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "zfskit/error.hpp"

namespace zfs {

namespace {

void require_same_unit(const SpinTensor& a, const SpinTensor& b) {
  if (a.unit() != b.unit()) {
    fail(ErrorKind::InvalidInput, "tensor unit mismatch: " + std::string(to_string(a.unit())) + " vs " +
                                      std::string(to_string(b.unit())));
  }
}

// Sign convention for eigenvectors: the largest-magnitude component is positive,
// the first one wins ties.
Vector3 orient(Vector3 v) {
  int k = 0;
  for (int i = 1; i < 3; ++i) {
    if (std::abs(v[i]) > std::abs(v[k]) + 1e-12) k = i;
  }
  return v[k] < 0 ? Vector3(-v) : v;
}

bool lex_greater(const Vector3& a, const Vector3& b) {
  for (int i = 0; i < 3; ++i) {
    if (std::abs(a[i] - b[i]) > 1e-12) return a[i] > b[i];
  }
  return false;
}

}  // namespace

SpinTensor traceless_project(const Matrix3& matrix, EnergyUnit unit) {
  if (!matrix.allFinite()) fail(ErrorKind::InvalidInput, "traceless_project: non-finite tensor component");
  Matrix3 sym = 0.5 * (matrix + matrix.transpose());
  sym.diagonal().array() -= sym.trace() / 3.0;
  return SpinTensor(sym, unit);
}

SpinTensor SpinTensor::in(EnergyUnit unit) const {
  SpinTensor out = *this;
  out.m_ *= mhz_per(unit_) / mhz_per(unit);
  out.unit_ = unit;
  return out;
}

std::array<double, 9> SpinTensor::row_major() const {
  std::array<double, 9> out{};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) out[3 * a + b] = m_(a, b);
  return out;
}

SpinTensor& SpinTensor::operator+=(const SpinTensor& other) {
  require_same_unit(*this, other);
  m_ += other.m_;
  return *this;
}

SpinTensor& SpinTensor::operator-=(const SpinTensor& other) {
  require_same_unit(*this, other);
  m_ -= other.m_;
  return *this;
}

SpinTensor& SpinTensor::operator*=(double s) {
  m_ *= s;
  return *this;
}

SpinTensor& SpinTensor::operator/=(double s) {
  m_ /= s;
  return *this;
}

ZfsParameters extract_parameters(const SpinTensor& t) {
  ZfsParameters p;
  p.unit = t.unit();
  const double scale = t.max_abs();
  if (scale == 0.0) {
    p.degenerate = true;
    return p;
  }

  Eigen::SelfAdjointEigenSolver<Matrix3> solver(t.matrix());
  const Vector3 lambda = solver.eigenvalues();
  std::array<Vector3, 3> vec;
  for (int i = 0; i < 3; ++i) vec[i] = orient(solver.eigenvectors().col(i));

  const double tie = 1e-9 * scale;

  // z: largest |eigenvalue|; equal magnitudes are split by eigenvector order
  int z = 0;
  for (int i = 1; i < 3; ++i) {
    const double diff = std::abs(lambda[i]) - std::abs(lambda[z]);
    if (diff > tie || (std::abs(diff) <= tie && lex_greater(vec[i], vec[z]))) z = i;
  }
  int x = (z + 1) % 3;
  int y = (z + 2) % 3;
  if (lambda[x] > lambda[y]) std::swap(x, y);

  const Vector3 ez = vec[z];
  Vector3 ex;
  if (std::abs(lambda[y] - lambda[x]) <= tie) {
    // axial: any in-plane pair is an eigenbasis, take the lab axis least aligned with z
    int k = 0;
    for (int i = 1; i < 3; ++i) {
      if (std::abs(ez[i]) < std::abs(ez[k]) - 1e-12) k = i;
    }
    Vector3 lab = Vector3::Unit(k);
    ex = (lab - lab.dot(ez) * ez).normalized();
  } else {
    ex = vec[x];
  }
  const Vector3 ey = ez.cross(ex);

  p.axes.row(0) = ex.transpose();
  p.axes.row(1) = ey.transpose();
  p.axes.row(2) = ez.transpose();
  p.eigenvalues = Vector3(lambda[x], lambda[y], lambda[z]);
  p.D = lambda[z] - 0.5 * (lambda[x] + lambda[y]);
  p.E = 0.5 * (lambda[y] - lambda[x]);
  return p;
}

bool is_orthogonal(const Matrix3& r, double tol) {
  if (!r.allFinite()) return false;
  return ((r.transpose() * r) - Matrix3::Identity()).cwiseAbs().maxCoeff() <= tol;
}

Matrix3 axis_angle(const Vector3& axis, double angle) {
  if (!(axis.norm() > 0.0)) fail(ErrorKind::InvalidInput, "rotation axis must be non-zero");
  return Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
}

SymmetryGroup::SymmetryGroup(std::vector<Matrix3> ops) : ops_(std::move(ops)) {
  if (ops_.empty()) fail(ErrorKind::InvalidInput, "symmetry group needs at least one operation");
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    if (!is_orthogonal(ops_[i])) {
      fail(ErrorKind::InvalidInput, "symmetry operation " + std::to_string(i) + " is not orthogonal");
    }
  }
}

SymmetryGroup SymmetryGroup::identity() { return SymmetryGroup({Matrix3::Identity()}); }

SymmetryGroup SymmetryGroup::c3(const Vector3& axis) {
  const double third = 2.0 * std::numbers::pi / 3.0;
  return SymmetryGroup({Matrix3::Identity(), axis_angle(axis, third), axis_angle(axis, 2.0 * third)});
}

SymmetryGroup SymmetryGroup::c3v(const Vector3& axis) {
  const Vector3 n = axis.normalized();
  // one mirror plane contains the axis and the lab direction least aligned with it
  int k = 0;
  for (int i = 1; i < 3; ++i) {
    if (std::abs(n[i]) < std::abs(n[k])) k = i;
  }
  const Vector3 in_plane = (Vector3::Unit(k) - Vector3::Unit(k).dot(n) * n).normalized();
  const Vector3 normal = n.cross(in_plane);
  const Matrix3 mirror = Matrix3::Identity() - 2.0 * normal * normal.transpose();

  std::vector<Matrix3> ops = c3(n).ops();
  const std::vector<Matrix3> rotations = ops;
  for (const Matrix3& r : rotations) ops.push_back(r * mirror);
  return SymmetryGroup(std::move(ops));
}

SpinTensor rotate(const SpinTensor& t, const Matrix3& r) {
  if (!is_orthogonal(r)) fail(ErrorKind::InvalidInput, "rotate: matrix is not orthogonal");
  return traceless_project(r * t.matrix() * r.transpose(), t.unit());
}

SpinTensor symmetry_average(std::span<const SpinTensor> tensors, const SymmetryGroup& g,
                            std::span<const double> weights) {
  if (tensors.empty()) fail(ErrorKind::InvalidInput, "symmetry_average: empty tensor list");
  if (!weights.empty() && weights.size() != tensors.size()) {
    fail(ErrorKind::InvalidInput, "symmetry_average: " + std::to_string(weights.size()) + " weights for " +
                                      std::to_string(tensors.size()) + " tensors");
  }
  const EnergyUnit unit = tensors.front().unit();
  double weight_sum = 0.0;
  for (std::size_t i = 0; i < tensors.size(); ++i) {
    if (tensors[i].unit() != unit) fail(ErrorKind::InvalidInput, "symmetry_average: unit mismatch");
    const double w = weights.empty() ? 1.0 : weights[i];
    if (!(w >= 0.0) || !std::isfinite(w)) fail(ErrorKind::InvalidInput, "symmetry_average: negative weight");
    weight_sum += w;
  }
  if (!(weight_sum > 0.0)) fail(ErrorKind::InvalidInput, "symmetry_average: weights sum to zero");

  Matrix3 acc = Matrix3::Zero();
  for (std::size_t i = 0; i < tensors.size(); ++i) {
    const double w = weights.empty() ? 1.0 : weights[i];
    Matrix3 orbit = Matrix3::Zero();
    for (const Matrix3& r : g.ops()) orbit += r * tensors[i].matrix() * r.transpose();
    acc += w * orbit;
  }
  acc /= weight_sum * static_cast<double>(g.order());
  return traceless_project(acc, unit);
}

}  // namespace zfs

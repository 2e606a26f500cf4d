#pragma once

#include <vector>

#include <Eigen/Dense>

#include "zfskit/gaussian_orbital.hpp"

namespace zfs::detail {

/// Normalization constant of one Cartesian s or p primitive.
double primitive_norm(const GaussianTerm& t);

/// Hermite expansion coefficients E^{ij}_t (t = 0..i+j) of
/// (x-A)^i exp(-a (x-A)^2) (x-B)^j exp(-b (x-B)^2) along one axis.
std::vector<double> hermite_e(int i, int j, double a, double b, double A, double B);

/// Hermite Coulomb integrals R_{tuv}(alpha, PQ) for t+u+v <= L, stored in a
/// dense (L+1)^3 cube.
class HermiteCoulomb {
 public:
  HermiteCoulomb(double alpha, const Eigen::Vector3d& pq, int L);

  double operator()(int t, int u, int v) const { return r_[index(t, u, v)]; }
  int order() const { return L_; }

 private:
  int index(int t, int u, int v) const { return (t * (L_ + 1) + u) * (L_ + 1) + v; }

  int L_;
  std::vector<double> r_;
};

}  // namespace zfs::detail

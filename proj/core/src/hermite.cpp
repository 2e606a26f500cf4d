#include "hermite.hpp"

#include <cmath>
#include <numbers>

#include "boys.hpp"

namespace zfs::detail {

double primitive_norm(const GaussianTerm& t) {
  const double a = t.exponent();
  const double s = std::pow(2.0 * a / std::numbers::pi, 0.75);
  return t.angular == Angular::S ? s : s * std::sqrt(4.0 * a);
}

std::vector<double> hermite_e(int i, int j, double a, double b, double A, double B) {
  const double p = a + b;
  const double mu = a * b / p;
  const double P = (a * A + b * B) / p;
  const double XPA = P - A;
  const double XPB = P - B;
  const double XAB = A - B;

  // table[ii][jj][t]
  const int tmax = i + j;
  auto idx = [&](int ii, int jj, int t) { return (ii * (j + 1) + jj) * (tmax + 1) + t; };
  std::vector<double> table((i + 1) * (j + 1) * (tmax + 1), 0.0);
  auto at = [&](int ii, int jj, int t) -> double {
    if (t < 0 || t > ii + jj) return 0.0;
    return table[idx(ii, jj, t)];
  };

  table[idx(0, 0, 0)] = std::exp(-mu * XAB * XAB);
  for (int ii = 0; ii <= i; ++ii) {
    for (int jj = 0; jj <= j; ++jj) {
      if (ii == 0 && jj == 0) continue;
      for (int t = 0; t <= ii + jj; ++t) {
        double v;
        if (ii > 0) {
          v = at(ii - 1, jj, t - 1) / (2.0 * p) + XPA * at(ii - 1, jj, t) + (t + 1) * at(ii - 1, jj, t + 1);
        } else {
          v = at(ii, jj - 1, t - 1) / (2.0 * p) + XPB * at(ii, jj - 1, t) + (t + 1) * at(ii, jj - 1, t + 1);
        }
        table[idx(ii, jj, t)] = v;
      }
    }
  }
  std::vector<double> out(tmax + 1);
  for (int t = 0; t <= tmax; ++t) out[t] = table[idx(i, j, t)];
  return out;
}

HermiteCoulomb::HermiteCoulomb(double alpha, const Eigen::Vector3d& pq, int L)
    : L_(L), r_((L + 1) * (L + 1) * (L + 1), 0.0) {
  const int dim = L + 1;
  // work[n][t][u][v], n = auxiliary order
  std::vector<double> work(dim * dim * dim * dim, 0.0);
  auto w = [&](int n, int t, int u, int v) -> double& { return work[((n * dim + t) * dim + u) * dim + v]; };

  std::vector<double> F(dim);
  boys(alpha * pq.squaredNorm(), F);
  double factor = 1.0;
  for (int n = 0; n <= L; ++n) {
    w(n, 0, 0, 0) = factor * F[n];
    factor *= -2.0 * alpha;
  }

  for (int order = 1; order <= L; ++order) {
    for (int n = 0; n <= L - order; ++n) {
      for (int t = 0; t <= order; ++t) {
        for (int u = 0; u <= order - t; ++u) {
          const int v = order - t - u;
          double val;
          if (t > 0) {
            val = pq.x() * w(n + 1, t - 1, u, v);
            if (t > 1) val += (t - 1) * w(n + 1, t - 2, u, v);
          } else if (u > 0) {
            val = pq.y() * w(n + 1, t, u - 1, v);
            if (u > 1) val += (u - 1) * w(n + 1, t, u - 2, v);
          } else {
            val = pq.z() * w(n + 1, t, u, v - 1);
            if (v > 1) val += (v - 1) * w(n + 1, t, u, v - 2);
          }
          w(n, t, u, v) = val;
        }
      }
    }
  }
  for (int t = 0; t <= L; ++t)
    for (int u = 0; u <= L - t; ++u)
      for (int v = 0; v <= L - t - u; ++v) r_[index(t, u, v)] = w(0, t, u, v);
}

}  // namespace zfs::detail

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>

#include <Eigen/Dense>

namespace zfs::detail {

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Compensated accumulation of 3x3 matrices, componentwise.
class CompensatedMatrix {
 public:
  void add(const Eigen::Matrix3d& m) {
    for (int i = 0; i < 9; ++i) c_[i].add(m.data()[i]);
  }
  Eigen::Matrix3d value() const {
    Eigen::Matrix3d m;
    for (int i = 0; i < 9; ++i) m.data()[i] = c_[i].value();
    return m;
  }

 private:
  std::array<CompensatedSum, 9> c_;
};

/// Runs body(begin, end) over fixed chunks of [0, n) in parallel and sums the
/// returned matrices in chunk order. The chunking does not depend on the
/// thread count, so results are bit-identical for any number of threads.
Eigen::Matrix3d chunked_reduce(std::size_t n, std::size_t chunk,
                               const std::function<Eigen::Matrix3d(std::size_t, std::size_t)>& body);

}  // namespace zfs::detail

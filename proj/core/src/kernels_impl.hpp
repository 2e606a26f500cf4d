#pragma once

#include <complex>
#include <vector>

#include "zfskit/density.hpp"
#include "zfskit/engine.hpp"

namespace zfs::detail {

/// Closed-form dipolar kernel between two analytic densities (Hartree a.u.).
Matrix3 analytic_kernel(const AnalyticDensity& a, const AnalyticDensity& b);

/// Voxel-pair quadrature on one grid. Builds the kernel table for all index
/// offsets once and reuses it for every density pair.
class DirectGridKernel {
 public:
  DirectGridKernel(const GridGeometry& geometry, const EngineConfig& cfg);

  Matrix3 apply(const GridDensity& a, const GridDensity& b) const;
  double cutoff() const { return cutoff_; }

 private:
  struct Screened {
    std::vector<int> i, j, k;
    std::vector<double> v;
  };
  Screened screen(const GridDensity& d) const;
  std::size_t table_index(int di, int dj, int dk) const;

  GridGeometry geometry_;
  double cutoff_ = 0.0;
  double screening_ = 0.0;
  std::array<int, 3> span_{};       // table extent per axis
  std::vector<double> table_;       // 6 components per offset: xx yy zz xy xz yz
};

/// Fourier coefficients of a periodic grid density, scaled by the voxel volume.
struct SpectralDensity {
  GridGeometry geometry;
  std::vector<std::complex<double>> coeffs;  // r2c half spectrum, n1 x n2 x (n3/2+1)
};

SpectralDensity to_spectral(const GridDensity& d);
Matrix3 spectral_kernel(const SpectralDensity& a, const SpectralDensity& b);

}  // namespace zfs::detail

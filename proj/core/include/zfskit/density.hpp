#pragma once

#include <array>
#include <variant>
#include <vector>

#include "zfskit/gaussian_orbital.hpp"
#include "zfskit/grid.hpp"

namespace zfs {

/// One Hermite-Gaussian expansion of a product of two Cartesian primitives:
///   weight * sum_{t,u,v} ex[t] ey[u] ez[v] * d^t/dPx d^u/dPy d^v/dPz exp(-p |r-P|^2)
struct HermitePrimitive {
  double exponent = 0.0;
  Vector3 center = Vector3::Zero();
  double weight = 0.0;
  std::array<std::vector<double>, 3> e;

  int max_order() const;
};

/// Product of two analytic orbitals in closed form.
struct AnalyticDensity {
  std::vector<HermitePrimitive> primitives;
  GaussianOrbital left;
  GaussianOrbital right;
};

struct GridDensity {
  GridGeometry geometry;
  std::vector<double> values;
};

/// n_mn(r) = psi_m(r) psi_n(r), analytic or on a grid.
class DensityField {
 public:
  explicit DensityField(AnalyticDensity d) : rep_(std::move(d)) {}
  explicit DensityField(GridDensity d) : rep_(std::move(d)) {}

  bool is_analytic() const { return std::holds_alternative<AnalyticDensity>(rep_); }
  const AnalyticDensity& analytic() const { return std::get<AnalyticDensity>(rep_); }
  const GridDensity& grid() const { return std::get<GridDensity>(rep_); }

  /// Integral over all space (analytic) or over the cell (grid).
  double norm() const;
  /// Analytic densities only; grids are sampled data.
  double value_at(const Vector3& r) const;

 private:
  std::variant<AnalyticDensity, GridDensity> rep_;
};

/// Hermite expansion of one primitive product; exposed for the Coulomb kernels and tests.
HermitePrimitive hermite_product(const GaussianTerm& a, const GaussianTerm& b);

/// Pointwise product. The result does not depend on argument order: the
/// analytic route canonicalizes the pair first, the grid route multiplies
/// commutatively. Throws InvalidInput for mismatched grids.
DensityField pair_density(const GaussianOrbital& m, const GaussianOrbital& n);
DensityField pair_density(const GridOrbital& m, const GridOrbital& n);

}  // namespace zfs

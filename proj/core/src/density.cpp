#include "zfskit/density.hpp"

#include <cmath>
#include <numbers>

#include "hermite.hpp"
#include "zfskit/error.hpp"

namespace zfs {

int HermitePrimitive::max_order() const {
  return static_cast<int>(e[0].size() + e[1].size() + e[2].size()) - 3;
}

HermitePrimitive hermite_product(const GaussianTerm& a, const GaussianTerm& b) {
  const auto pa = cartesian_powers(a.angular);
  const auto pb = cartesian_powers(b.angular);
  const double ea = a.exponent();
  const double eb = b.exponent();
  HermitePrimitive h;
  h.exponent = ea + eb;
  h.center = (ea * a.center + eb * b.center) / h.exponent;
  h.weight = a.coefficient * b.coefficient * detail::primitive_norm(a) * detail::primitive_norm(b);
  for (int d = 0; d < 3; ++d) h.e[d] = detail::hermite_e(pa[d], pb[d], ea, eb, a.center[d], b.center[d]);
  return h;
}

double DensityField::norm() const {
  if (is_analytic()) {
    double s = 0.0;
    for (const auto& h : analytic().primitives) {
      s += h.weight * h.e[0][0] * h.e[1][0] * h.e[2][0] * std::pow(std::numbers::pi / h.exponent, 1.5);
    }
    return s;
  }
  double s = 0.0;
  for (double v : grid().values) s += v;
  return s * grid().geometry.voxel_volume();
}

double DensityField::value_at(const Vector3& r) const {
  if (!is_analytic()) fail(ErrorKind::UnsupportedRepresentation, "value_at needs an analytic density");
  return analytic().left.value_at(r) * analytic().right.value_at(r);
}

DensityField pair_density(const GaussianOrbital& m, const GaussianOrbital& n) {
  const bool swap = canonical_less(n, m);
  const GaussianOrbital& first = swap ? n : m;
  const GaussianOrbital& second = swap ? m : n;
  AnalyticDensity d;
  d.left = first;
  d.right = second;
  d.primitives.reserve(first.terms.size() * second.terms.size());
  for (const auto& a : first.terms)
    for (const auto& b : second.terms) d.primitives.push_back(hermite_product(a, b));
  return DensityField(std::move(d));
}

DensityField pair_density(const GridOrbital& m, const GridOrbital& n) {
  if (!(m.geometry == n.geometry)) fail(ErrorKind::InvalidInput, "pair_density: orbitals live on different grids");
  if (m.values.size() != n.values.size()) fail(ErrorKind::InvalidInput, "pair_density: value count mismatch");
  GridDensity d;
  d.geometry = m.geometry;
  d.values.resize(m.values.size());
  for (std::size_t i = 0; i < m.values.size(); ++i) d.values[i] = m.values[i] * n.values[i];
  return DensityField(std::move(d));
}

}  // namespace zfs

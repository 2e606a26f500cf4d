#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "test_support.hpp"
#include "zfskit/density.hpp"
#include "zfskit/engine.hpp"

using namespace zfs;

namespace {

// Two normalized spherical Gaussian charges with exponents a and b interact
// through J(R) = erf(c R) / R, c = sqrt(ab / (a + b)). The dipolar tensor is
// minus the traceless Hessian of J.
Matrix3 gaussian_charge_tensor(double a, double b, const Vector3& R) {
  const double c = std::sqrt(a * b / (a + b));
  const double r = R.norm();
  const double g = 2.0 * c / std::sqrt(std::numbers::pi) * std::exp(-c * c * r * r);
  const double erf = std::erf(c * r);
  const double f1 = g / r - erf / (r * r);
  const double f2 = g * (-2.0 * c * c - 2.0 / (r * r)) + 2.0 * erf / (r * r * r);
  const Vector3 u = R / r;
  const Matrix3 uu = u * u.transpose();
  const Matrix3 h = f2 * uu + f1 / r * (Matrix3::Identity() - uu);
  return -(h - h.trace() / 3.0 * Matrix3::Identity());
}

DensityField s_density(const Vector3& c, double width) {
  const auto o = GaussianOrbital::s(c, width);
  return pair_density(o, o);
}

GridOrbital on_grid(const GaussianOrbital& o, const GridGeometry& g) { return normalize(sample(o, g)); }

GridDensity shifted(const GridDensity& d, int s) {
  GridDensity out = d;
  const auto& n = d.geometry.shape;
  for (int i = 0; i < n[0]; ++i)
    for (int j = 0; j < n[1]; ++j)
      for (int k = 0; k < n[2]; ++k) {
        const std::size_t from = (static_cast<std::size_t>(i) * n[1] + j) * n[2] + k;
        const std::size_t to =
            (static_cast<std::size_t>((i + s) % n[0]) * n[1] + (j + s) % n[1]) * n[2] + (k + s) % n[2];
        out.values[to] = d.values[from];
      }
  return out;
}

}  // namespace

TEST(AnalyticKernel, SphericalChargesMatchErfClosedForm) {
  struct Case {
    double wa, wb;
    Vector3 R;
  };
  for (const Case& c : {Case{1.0, 1.0, Vector3(0, 0, 4)}, Case{1.0, 1.0, Vector3(0.3, -0.4, 1.2)},
                        Case{0.7, 1.6, Vector3(2.0, 1.0, -0.5)}, Case{1.0, 1.0, Vector3(0, 0, 25)}}) {
    const Matrix3 t = kernel_direct(s_density(c.R, c.wa), s_density(Vector3::Zero(), c.wb));
    const Matrix3 ref = gaussian_charge_tensor(1.0 / (c.wa * c.wa), 1.0 / (c.wb * c.wb), c.R);
    EXPECT_LT(max_abs_diff(t, ref), 1e-12 * ref.cwiseAbs().maxCoeff()) << c.R.transpose();
  }
}

TEST(AnalyticKernel, CoincidentSphericalChargesGiveZero) {
  const Matrix3 t = kernel_direct(s_density(Vector3(1, 2, 3), 1.0), s_density(Vector3(1, 2, 3), 0.6));
  EXPECT_LT(t.cwiseAbs().maxCoeff(), 1e-14);
}

TEST(AnalyticKernel, SymmetricInItsArguments) {
  const GaussianOrbital p{{GaussianTerm{1.0, Vector3(0.2, 0, 0), 0.9, Angular::Px},
                           GaussianTerm{0.5, Vector3(0, 0.1, 0.3), 1.1, Angular::Pz}}};
  const auto q = normalize(p);
  const auto s = GaussianOrbital::s(Vector3(0.5, 0.5, 2.5), 1.0);
  const DensityField a = pair_density(q, q);
  const DensityField b = pair_density(q, s);
  EXPECT_LT(max_abs_diff(kernel_direct(a, b), kernel_direct(b, a)), 1e-14);
}

TEST(AnalyticKernel, POrbitalDensitiesAgreeWithSpectralGrid) {
  // independent route: FFT on a fine periodic grid, large cell
  const auto p = normalize(GaussianOrbital{{GaussianTerm{1.0, Vector3(0, 0, -1.5), 1.0, Angular::Pz}}});
  const auto q = normalize(GaussianOrbital{{GaussianTerm{1.0, Vector3(0.5, 0, 1.5), 1.0, Angular::Px},
                                            GaussianTerm{0.6, Vector3(0.5, 0, 1.5), 1.0, Angular::S}}});
  const Matrix3 exact = kernel_direct(pair_density(p, p), pair_density(q, q));
  GridGeometry g = cubic_cell(28.0, 80);
  g.origin = Vector3::Constant(-14.0);
  const Matrix3 fft = kernel_spectral(pair_density(on_grid(p, g), on_grid(p, g)),
                                      pair_density(on_grid(q, g), on_grid(q, g)));
  EXPECT_LT(max_abs_diff(exact, fft), 5e-3 * exact.cwiseAbs().maxCoeff()) << exact << "\n" << fft;
}

TEST(GridKernel, DirectMatchesSpectralForSeparatedPair) {
  // periodic images shift the spectral sum by about (separation / cell)^3
  GridGeometry g = cubic_cell(20.0, 40);
  g.origin = Vector3::Constant(-10.0);
  const auto a = on_grid(GaussianOrbital::s(Vector3(0, 0, -1.5), 1.0), g);
  const auto b = on_grid(GaussianOrbital::s(Vector3(0.5, 0, 1.5), 1.0), g);
  const DensityField na = pair_density(a, a), nb = pair_density(b, b);
  const Matrix3 d = kernel_direct(na, nb);
  const Matrix3 s = kernel_spectral(na, nb);
  EXPECT_LT(max_abs_diff(d, s), 1e-2 * d.cwiseAbs().maxCoeff());
  EXPECT_LT(max_abs_diff(d, kernel_direct(nb, na)), 1e-13 * d.cwiseAbs().maxCoeff());
}

TEST(GridKernel, CyclicTranslationByHalfACellLeavesTensorUnchanged) {
  const GridGeometry g = cubic_cell(24.0, 36);
  const auto a = on_grid(GaussianOrbital::s(Vector3(6, 6, 5), 1.0), g);
  const auto b = on_grid(GaussianOrbital::s(Vector3(6, 7, 8), 1.2), g);
  const DensityField na = pair_density(a, a), nb = pair_density(b, b);
  const Matrix3 base = kernel_direct(na, nb);
  const DensityField ta(shifted(na.grid(), 18)), tb(shifted(nb.grid(), 18));
  EXPECT_LT(max_abs_diff(kernel_direct(ta, tb), base), 1e-12 * base.cwiseAbs().maxCoeff());
  // the explicitly displaced pair sampled at shifted centers is the same data
  const auto a2 = on_grid(GaussianOrbital::s(Vector3(18, 18, 17), 1.0), g);
  const auto b2 = on_grid(GaussianOrbital::s(Vector3(18, 19, 20), 1.2), g);
  const Matrix3 moved = kernel_direct(pair_density(a2, a2), pair_density(b2, b2));
  EXPECT_LT(max_abs_diff(moved, base), 1e-4 * base.cwiseAbs().maxCoeff());  // tails cut at the cell edge differ
  EXPECT_LT(max_abs_diff(kernel_spectral(ta, tb), kernel_spectral(na, nb)), 1e-12 * base.cwiseAbs().maxCoeff());
}

TEST(GridKernel, CutoffBeyondHalfCellIsRejected) {
  const GridGeometry g = cubic_cell(10.0, 8);
  const auto a = on_grid(GaussianOrbital::s(Vector3(5, 5, 5), 1.0), g);
  const DensityField na = pair_density(a, a);
  EngineConfig cfg;
  cfg.cutoff = 5.5;
  expect_error_kind([&] { kernel_direct(na, na, cfg); }, ErrorKind::PeriodicImage);
  cfg.cutoff = 3.0;
  EXPECT_NO_THROW(kernel_direct(na, na, cfg));
  EXPECT_DOUBLE_EQ(default_cutoff(g), 5.0);
}

TEST(GridKernel, RepresentationChecks) {
  const DensityField analytic = s_density(Vector3::Zero(), 1.0);
  expect_error_kind([&] { kernel_spectral(analytic, analytic); }, ErrorKind::UnsupportedRepresentation);
  const GridGeometry box = bounding_box({Vector3::Zero()}, 4.0, 8);
  const auto a = on_grid(GaussianOrbital::s(Vector3::Zero(), 1.0), box);
  const DensityField na = pair_density(a, a);
  expect_error_kind([&] { kernel_spectral(na, na); }, ErrorKind::UnsupportedRepresentation);
  EXPECT_THROW(kernel_direct(analytic, na), Error);
}

TEST(GridKernel, ScreeningOnlyDropsNegligibleVoxels) {
  GridGeometry g = cubic_cell(16.0, 24);
  g.origin = Vector3::Constant(-8.0);
  const auto a = on_grid(GaussianOrbital::s(Vector3(0, 0, -2), 1.0), g);
  const auto b = on_grid(GaussianOrbital::s(Vector3(0, 0, 2), 1.0), g);
  const DensityField na = pair_density(a, a), nb = pair_density(b, b);
  EngineConfig none;
  none.screening = 0.0;
  const Matrix3 full = kernel_direct(na, nb, none);
  EXPECT_LT(max_abs_diff(kernel_direct(na, nb), full), 1e-10 * full.cwiseAbs().maxCoeff());
}

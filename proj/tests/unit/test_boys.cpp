#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "boys.hpp"

namespace {

double boys_quadrature(int n, double T) {
  auto f = [&](double t) { return std::pow(t, 2 * n) * std::exp(-T * t * t); };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, 1.0, 15, 1e-14);
}

}  // namespace

TEST(Boys, MatchesQuadratureAcrossRegimes) {
  for (double T : {0.0, 1e-8, 0.3, 1.0, 7.5, 20.0, 34.9, 35.1, 50.0, 120.0}) {
    std::array<double, 9> f{};
    zfs::detail::boys(T, f);
    for (int n = 0; n < 9; ++n) {
      const double ref = boys_quadrature(n, T);
      EXPECT_NEAR(f[n], ref, 1e-13 * std::max(1.0, std::abs(ref)) + 1e-15) << "n=" << n << " T=" << T;
      EXPECT_NEAR(f[n] / ref, 1.0, 1e-11) << "n=" << n << " T=" << T;
    }
  }
}

TEST(Boys, ZeroArgumentIsOneOverOddInteger) {
  std::array<double, 6> f{};
  zfs::detail::boys(0.0, f);
  for (int n = 0; n < 6; ++n) EXPECT_DOUBLE_EQ(f[n], 1.0 / (2 * n + 1));
}

#include "boys.hpp"

#include <cmath>
#include <numbers>

namespace zfs::detail {

void boys(double T, std::span<double> out) {
  if (out.empty()) return;
  const int nmax = static_cast<int>(out.size()) - 1;

  if (T < 1e-15) {
    for (int n = 0; n <= nmax; ++n) out[n] = 1.0 / (2 * n + 1);
    return;
  }

  const double emt = std::exp(-T);
  if (T > 35.0) {
    // upward recursion from the erf closed form is stable for large T
    out[0] = 0.5 * std::sqrt(std::numbers::pi / T) * std::erf(std::sqrt(T));
    for (int n = 0; n < nmax; ++n) out[n + 1] = ((2 * n + 1) * out[n] - emt) / (2.0 * T);
    return;
  }

  // series for the highest order, then downward recursion
  double term = 1.0 / (2 * nmax + 1);
  double sum = term;
  for (int k = 1; k < 400; ++k) {
    term *= 2.0 * T / (2 * nmax + 2 * k + 1);
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  out[nmax] = emt * sum;
  for (int n = nmax; n > 0; --n) out[n - 1] = (2.0 * T * out[n] + emt) / (2 * n - 1);
}

}  // namespace zfs::detail

#include "zfskit/gaussian_orbital.hpp"

#include <cmath>
#include <numbers>
#include <tuple>

#include "hermite.hpp"
#include "zfskit/error.hpp"

namespace zfs {

namespace {

double primitive_overlap(const GaussianTerm& x, const GaussianTerm& y) {
  const auto px = cartesian_powers(x.angular);
  const auto py = cartesian_powers(y.angular);
  const double a = x.exponent();
  const double b = y.exponent();
  double s = std::pow(std::numbers::pi / (a + b), 1.5);
  for (int d = 0; d < 3; ++d) s *= detail::hermite_e(px[d], py[d], a, b, x.center[d], y.center[d])[0];
  return s * detail::primitive_norm(x) * detail::primitive_norm(y);
}

void check_widths(const GaussianOrbital& o) {
  if (o.terms.empty()) fail(ErrorKind::InvalidInput, "Gaussian orbital has no terms");
  for (const auto& t : o.terms) {
    if (!(t.width > 0.0) || !std::isfinite(t.width)) fail(ErrorKind::InvalidInput, "Gaussian width must be positive");
    if (!std::isfinite(t.coefficient) || !t.center.allFinite()) {
      fail(ErrorKind::InvalidInput, "Gaussian term has non-finite parameters");
    }
  }
}

int angular_rank(Angular a) { return static_cast<int>(a); }

}  // namespace

std::array<int, 3> cartesian_powers(Angular a) {
  switch (a) {
    case Angular::S: return {0, 0, 0};
    case Angular::Px: return {1, 0, 0};
    case Angular::Py: return {0, 1, 0};
    case Angular::Pz: return {0, 0, 1};
  }
  return {0, 0, 0};
}

GaussianOrbital GaussianOrbital::s(const Vector3& center, double width, double coefficient) {
  return GaussianOrbital{{GaussianTerm{coefficient, center, width, Angular::S}}};
}

double GaussianOrbital::value_at(const Vector3& r) const {
  double v = 0.0;
  for (const auto& t : terms) {
    const Vector3 d = r - t.center;
    double poly = 1.0;
    switch (t.angular) {
      case Angular::S: break;
      case Angular::Px: poly = d.x(); break;
      case Angular::Py: poly = d.y(); break;
      case Angular::Pz: poly = d.z(); break;
    }
    v += t.coefficient * detail::primitive_norm(t) * poly * std::exp(-t.exponent() * d.squaredNorm());
  }
  return v;
}

double overlap(const GaussianOrbital& a, const GaussianOrbital& b) {
  double s = 0.0;
  for (const auto& x : a.terms)
    for (const auto& y : b.terms) s += x.coefficient * y.coefficient * primitive_overlap(x, y);
  return s;
}

double GaussianOrbital::norm_squared() const { return overlap(*this, *this); }

GaussianOrbital normalize(const GaussianOrbital& orbital) {
  check_widths(orbital);
  const double n2 = orbital.norm_squared();
  if (!(n2 > 0.0)) fail(ErrorKind::InvalidInput, "cannot normalize a Gaussian orbital with zero norm");
  GaussianOrbital out = orbital;
  const double s = 1.0 / std::sqrt(n2);
  for (auto& t : out.terms) t.coefficient *= s;
  return out;
}

GaussianOrbital rotate(const GaussianOrbital& orbital, const Matrix3& r) {
  GaussianOrbital out;
  for (const auto& t : orbital.terms) {
    const Vector3 c = r * t.center;
    if (t.angular == Angular::S) {
      out.terms.push_back(GaussianTerm{t.coefficient, c, t.width, Angular::S});
      continue;
    }
    // a p function along e_k maps to p functions along the columns of R
    const int k = t.angular == Angular::Px ? 0 : (t.angular == Angular::Py ? 1 : 2);
    constexpr Angular p[3] = {Angular::Px, Angular::Py, Angular::Pz};
    for (int j = 0; j < 3; ++j) {
      const double c_jk = r(j, k);
      if (c_jk != 0.0) out.terms.push_back(GaussianTerm{t.coefficient * c_jk, c, t.width, p[j]});
    }
  }
  return out;
}

GaussianOrbital scale(const GaussianOrbital& orbital, double factor) {
  if (!(factor > 0.0)) fail(ErrorKind::InvalidInput, "scale factor must be positive");
  GaussianOrbital out = orbital;
  for (auto& t : out.terms) {
    t.center *= factor;
    t.width *= factor;
  }
  return out;
}

bool operator==(const GaussianTerm& a, const GaussianTerm& b) {
  return a.coefficient == b.coefficient && a.center == b.center && a.width == b.width && a.angular == b.angular;
}

bool operator==(const GaussianOrbital& a, const GaussianOrbital& b) { return a.terms == b.terms; }

bool canonical_less(const GaussianOrbital& a, const GaussianOrbital& b) {
  auto key = [](const GaussianTerm& t) {
    return std::make_tuple(t.width, t.center.x(), t.center.y(), t.center.z(), angular_rank(t.angular), t.coefficient);
  };
  const std::size_t n = std::min(a.terms.size(), b.terms.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto ka = key(a.terms[i]);
    const auto kb = key(b.terms[i]);
    if (ka < kb) return true;
    if (kb < ka) return false;
  }
  return a.terms.size() < b.terms.size();
}

}  // namespace zfs

#pragma once

#include <array>
#include <vector>

#include "zfskit/spin_tensor.hpp"

namespace zfs {

enum class Angular { S, Px, Py, Pz };

/// Cartesian exponent triple of an angular label, e.g. Px -> (1,0,0).
std::array<int, 3> cartesian_powers(Angular a);

/// One primitive: coefficient * N * (r-c)^l * exp(-|r-c|^2 / (2 width^2)), with
/// N the primitive's own normalization constant. `width` is in Bohr and is the
/// orbital-space width, so two identical s terms a distance R apart overlap by
/// exp(-R^2 / (4 width^2)).
struct GaussianTerm {
  double coefficient = 1.0;
  Vector3 center = Vector3::Zero();
  double width = 1.0;
  Angular angular = Angular::S;

  double exponent() const { return 0.5 / (width * width); }
};

struct GaussianOrbital {
  std::vector<GaussianTerm> terms;

  static GaussianOrbital s(const Vector3& center, double width, double coefficient = 1.0);

  double value_at(const Vector3& r) const;
  double norm_squared() const;
};

/// <a|b> over all space.
double overlap(const GaussianOrbital& a, const GaussianOrbital& b);

/// Throws InvalidInput if the norm vanishes or a width is not positive.
GaussianOrbital normalize(const GaussianOrbital& orbital);

/// Rotates term centers about the origin and mixes p components accordingly.
GaussianOrbital rotate(const GaussianOrbital& orbital, const Matrix3& r);

/// Multiplies every center by `factor` and every width by `factor`; the
/// coefficients are rescaled so the orbital stays normalized.
GaussianOrbital scale(const GaussianOrbital& orbital, double factor);

/// Strict weak order used to canonicalize pair densities.
bool canonical_less(const GaussianOrbital& a, const GaussianOrbital& b);
bool operator==(const GaussianTerm& a, const GaussianTerm& b);
bool operator==(const GaussianOrbital& a, const GaussianOrbital& b);

}  // namespace zfs

#pragma once

#include "zfskit/engine.hpp"
#include "zfskit/orbital_set.hpp"
#include "zfskit/spin_tensor.hpp"

namespace zfs {

/// Two point spins; relative_sign = +1 for the same spin channel, -1 otherwise.
struct PointSpinPair {
  Vector3 r1 = Vector3::Zero();
  Vector3 r2 = Vector3::Zero();
  int relative_sign = 1;
};

/// Coupling of two point spins: (alpha^2/4) chi (R^2 delta - 3 R R) / R^5.
/// alpha^2/4 is alpha^2/8 times the two orderings of the pair. Throws
/// InvalidInput for coincident points.
SpinTensor point_dipole_d(const PointSpinPair& pair, EnergyUnit unit = EnergyUnit::MHz);

inline constexpr int brute_force_max_orbitals = 6;
inline constexpr std::size_t brute_force_max_voxels = 32 * 32 * 32;

struct BruteForceOptions {
  int points = 24;        // per axis, analytic sets only
  double padding = 6.0;   // Bohr around the outermost centers, analytic sets only
  ExchangeScope exchange_scope = ExchangeScope::AllPairs;
  EnergyUnit unit = EnergyUnit::MHz;
};

/// Literal voxel-pair double loop over the two-particle bracket for every
/// ordered pair of occupied spin-orbitals. Analytic sets are sampled on a
/// non-periodic box; grid sets use their own grid with minimum-image
/// distances below the default cutoff. Coincident voxels are skipped.
/// Throws Resource above 6 occupied orbitals or 32^3 voxels.
SpinTensor brute_force_d(const OrbitalSet& set, const BruteForceOptions& options = {});

}  // namespace zfs

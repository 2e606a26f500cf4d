#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "zfskit/density.hpp"
#include "zfskit/orbital_set.hpp"
#include "zfskit/spin_tensor.hpp"

namespace zfs {

enum class KernelPath { Direct, Spectral };

/// How the exchange-like bracket term n_mn(r) n_mn(r') is applied.
/// AllPairs evaluates the bracket as written for every occupied pair, with
/// chi multiplying both terms; SameSpinOnly drops it for opposite-spin pairs.
enum class ExchangeScope { AllPairs, SameSpinOnly };

std::string_view to_string(KernelPath p);
std::string_view to_string(ExchangeScope s);
KernelPath parse_kernel_path(std::string_view text);
ExchangeScope parse_exchange_scope(std::string_view text);

struct EngineConfig {
  KernelPath path = KernelPath::Direct;
  ExchangeScope exchange_scope = ExchangeScope::AllPairs;
  /// Direct grid path: minimum-image cutoff radius in Bohr. Defaults to half the
  /// smallest cell width, which is also the largest value accepted.
  std::optional<double> cutoff;
  /// Direct grid path: voxels with |n| below screening * max|n| are skipped.
  double screening = 1e-14;
  EnergyUnit unit = EnergyUnit::MHz;

  static constexpr double fine_structure = constants::fine_structure;
};

/// Largest admissible minimum-image cutoff for a periodic grid.
double default_cutoff(const GridGeometry& g);

/// T_ab = integral of K_ab(r - r') na(r) nb(r') with
/// K_ab(u) = (|u|^2 delta_ab - 3 u_a u_b) / |u|^5, in Hartree atomic units
/// (no alpha^2/8 prefactor). Analytic densities are integrated in closed form
/// through Hermite-Gaussian Coulomb integrals; grid densities by voxel-pair
/// quadrature with the coincident voxel dropped and, for periodic cells,
/// minimum-image distances truncated at the cutoff.
Matrix3 kernel_direct(const DensityField& na, const DensityField& nb, const EngineConfig& cfg = {});

/// Same integral on a periodic grid via FFT:
///   T_ab = (1/Omega) sum_{G != 0} 4 pi (G_a G_b / G^2 - delta_ab / 3) na(G) nb(G)^*.
/// Throws UnsupportedRepresentation for analytic or non-periodic inputs.
Matrix3 kernel_spectral(const DensityField& na, const DensityField& nb);

enum class BlockPair { I_I, I_II, II_II };
std::string_view to_string(BlockPair b);
BlockPair block_pair(Block a, Block b);

/// Contribution of the ordered pair (m, n) to d. `hartree_term` is
/// pref * chi * K(n_mm, n_nn) and `exchange_term` is -pref * chi * K(n_mn, n_mn),
/// pref = alpha^2 / 8, so the pair contributes their sum.
struct PairContribution {
  std::size_t m = 0;
  std::size_t n = 0;
  SpinChannel spin_m = SpinChannel::Up;
  SpinChannel spin_n = SpinChannel::Up;
  int chi = 1;
  SpinTensor hartree_term;
  SpinTensor exchange_term;
  BlockPair block = BlockPair::I_I;

  SpinTensor total() const { return hartree_term + exchange_term; }
};

struct CouplingResult {
  SpinTensor d_total;
  std::array<SpinTensor, 3> blocks;  // indexed by BlockPair
  KernelPath method = KernelPath::Direct;
  ExchangeScope exchange_scope = ExchangeScope::AllPairs;
  std::vector<PairContribution> pairs;  // every ordered pair m != n of occupied entries
  std::optional<GridGeometry> grid;
  std::optional<double> cutoff;
  std::vector<std::string> warnings;

  const SpinTensor& block(BlockPair b) const { return blocks[static_cast<int>(b)]; }
};

/// Evaluates the contribution of one ordered pair directly, including m == n,
/// whose bracket cancels identically.
PairContribution pair_contribution(const OrbitalSet& set, std::size_t m, std::size_t n,
                                   const EngineConfig& cfg = {});

/// d_ab = (alpha^2/8) sum_{m,n} chi_mn [K(n_mm, n_nn) - K(n_mn, n_mn)] over ordered
/// pairs of occupied spin-orbitals, accumulated per block pair with
/// compensated summation in a fixed order.
CouplingResult assemble_d(const OrbitalSet& set, const EngineConfig& cfg = {});

/// D = d / (S (S - 1/2)). Throws InvalidInput for S < 1.
SpinTensor d_to_D(const SpinTensor& d, SpinQuantum S);

/// Per-pair table as CSV (RFC 4180): m,n,spin_m,spin_n,chi,block_pair,xx,yy,zz,xy,xz,yz,unit.
void write_pair_table(std::ostream& out, const CouplingResult& result);

}  // namespace zfs

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "zfskit/gaussian_orbital.hpp"
#include "zfskit/grid.hpp"

namespace zfs {

/// A spin quantum number stored as twice its value, so 3/2 is exact.
class SpinQuantum {
 public:
  constexpr SpinQuantum() = default;
  static constexpr SpinQuantum from_twice(int twice) { return SpinQuantum(twice); }
  /// Throws InvalidInput unless `value` is an integer or half-integer.
  static SpinQuantum from_value(double value);

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return 0.5 * twice_; }

  friend constexpr bool operator==(SpinQuantum, SpinQuantum) = default;
  friend constexpr auto operator<=>(SpinQuantum, SpinQuantum) = default;

 private:
  constexpr explicit SpinQuantum(int twice) : twice_(twice) {}
  int twice_ = 0;
};

std::string to_string(SpinQuantum s);

enum class SpinChannel { Up, Down };
enum class Block { I, II };

std::string_view to_string(SpinChannel s);
std::string_view to_string(Block b);
SpinChannel parse_spin_channel(std::string_view text);
Block parse_block(std::string_view text);

using Orbital = std::variant<GaussianOrbital, GridOrbital>;

struct SpinOrbital {
  Orbital orbital;
  SpinChannel spin = SpinChannel::Up;
  int occupancy = 1;  // 0 or 1
  Block block = Block::I;
  /// Block-II entries only: index of the block-I orbital whose local moment
  /// polarizes this pair. Flipping that orbital exchanges the spin labels of
  /// the attached pair members (their spatial parts follow the moment).
  std::optional<std::size_t> polarized_by;
  std::string label;

  bool occupied() const { return occupancy == 1; }
};

/// Occupied and virtual spin-orbitals of one spin state plus its S and mS.
///
/// Invariants, checked on construction: N_up - N_down = 2 mS over occupied
/// entries; |mS| <= S; occupied block-II entries balance between channels;
/// one representation (all analytic or all on one grid).
class OrbitalSet {
 public:
  OrbitalSet(std::vector<SpinOrbital> entries, SpinQuantum total_spin, SpinQuantum projection);

  const std::vector<SpinOrbital>& entries() const { return entries_; }
  const SpinOrbital& operator[](std::size_t i) const { return entries_[i]; }
  std::size_t size() const { return entries_.size(); }
  SpinQuantum S() const { return S_; }
  SpinQuantum mS() const { return mS_; }

  bool is_analytic() const;
  /// Grid geometry shared by all orbitals; only valid when !is_analytic().
  const GridGeometry& geometry() const;

  /// Indices of occupied entries in list order.
  std::vector<std::size_t> occupied() const;
  int count(SpinChannel spin, std::optional<Block> block = std::nullopt) const;

 private:
  std::vector<SpinOrbital> entries_;
  SpinQuantum S_;
  SpinQuantum mS_;
};

/// Turns the block-I spin-up entry `index` into spin-down and lowers mS by one.
/// Spatial parts are frozen; block-II pairs attached to `index` through
/// `polarized_by` swap their spin labels.
OrbitalSet flip_occupation(const OrbitalSet& set, std::size_t index);

/// Samples every analytic orbital on `geometry` and renormalizes it on the grid.
OrbitalSet to_grid(const OrbitalSet& set, const GridGeometry& geometry);

/// Rotates every analytic orbital about the origin.
OrbitalSet rotate(const OrbitalSet& set, const Matrix3& r);

struct BiradicalModel {
  double separation = 20.0;   // Bohr, radical-radical distance along z
  double width = 1.0;         // Bohr
  int spectator_pairs = 0;
  double contamination = 0.0; // in [0, 1]
};

/// S = 1, mS = 1 surrogate biradical: two block-I s-Gaussians at the origin and
/// at (0, 0, separation), plus doubly occupied spectator pairs placed next to
/// alternating radical sites. With contamination > 0 the spin-down member of
/// each spectator pair is made more diffuse (width * (1 + contamination)), so
/// the two spin channels differ in spatial representation.
OrbitalSet build_biradical_model(const BiradicalModel& model);

}  // namespace zfs

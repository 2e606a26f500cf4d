#include "zfskit/orbital_set.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "zfskit/error.hpp"

namespace zfs {

SpinQuantum SpinQuantum::from_value(double value) {
  const double twice = 2.0 * value;
  if (!std::isfinite(value) || std::abs(twice - std::round(twice)) > 1e-9) {
    fail(ErrorKind::InvalidInput, "spin quantum number must be integer or half-integer, got " + std::to_string(value));
  }
  return SpinQuantum(static_cast<int>(std::lround(twice)));
}

std::string to_string(SpinQuantum s) {
  if (s.twice() % 2 == 0) return std::to_string(s.twice() / 2);
  return std::to_string(s.twice()) + "/2";
}

std::string_view to_string(SpinChannel s) { return s == SpinChannel::Up ? "up" : "down"; }
std::string_view to_string(Block b) { return b == Block::I ? "I" : "II"; }

SpinChannel parse_spin_channel(std::string_view text) {
  if (text == "up" || text == "alpha") return SpinChannel::Up;
  if (text == "down" || text == "beta") return SpinChannel::Down;
  fail(ErrorKind::Parse, "unknown spin channel '" + std::string(text) + "' (expected up or down)");
}

Block parse_block(std::string_view text) {
  if (text == "I" || text == "1") return Block::I;
  if (text == "II" || text == "2") return Block::II;
  fail(ErrorKind::Parse, "unknown orbital block '" + std::string(text) + "' (expected I or II)");
}

OrbitalSet::OrbitalSet(std::vector<SpinOrbital> entries, SpinQuantum total_spin, SpinQuantum projection)
    : entries_(std::move(entries)), S_(total_spin), mS_(projection) {
  if (entries_.empty()) fail(ErrorKind::InvalidInput, "orbital set is empty");
  if (S_.twice() < 0) fail(ErrorKind::InvalidInput, "total spin S must be non-negative");
  if (std::abs(mS_.twice()) > S_.twice()) {
    fail(ErrorKind::InvalidInput, "|mS| = " + to_string(mS_) + " exceeds S = " + to_string(S_));
  }
  if ((S_.twice() - mS_.twice()) % 2 != 0) fail(ErrorKind::InvalidInput, "S and mS must both be integer or half-integer");

  const bool analytic = std::holds_alternative<GaussianOrbital>(entries_.front().orbital);
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    const std::string where = "orbital " + std::to_string(i);
    if (e.occupancy != 0 && e.occupancy != 1) fail(ErrorKind::InvalidInput, where + ": occupancy must be 0 or 1");
    if (std::holds_alternative<GaussianOrbital>(e.orbital) != analytic) {
      fail(ErrorKind::InvalidInput, where + ": mixing analytic and grid orbitals in one set is not supported");
    }
    if (!analytic && !(std::get<GridOrbital>(e.orbital).geometry == std::get<GridOrbital>(entries_.front().orbital).geometry)) {
      fail(ErrorKind::InvalidInput, where + ": grid differs from orbital 0");
    }
    if (e.polarized_by) {
      if (e.block != Block::II) fail(ErrorKind::InvalidInput, where + ": polarized_by is only meaningful for block II");
      if (*e.polarized_by >= entries_.size() || entries_[*e.polarized_by].block != Block::I) {
        fail(ErrorKind::InvalidInput, where + ": polarized_by must reference a block-I orbital");
      }
    }
  }

  const int up = count(SpinChannel::Up);
  const int down = count(SpinChannel::Down);
  if (up - down != mS_.twice()) {
    fail(ErrorKind::InvalidInput, "occupations give N_up - N_down = " + std::to_string(up - down) +
                                      " but 2 mS = " + std::to_string(mS_.twice()));
  }
  if (count(SpinChannel::Up, Block::II) != count(SpinChannel::Down, Block::II)) {
    fail(ErrorKind::InvalidInput, "block-II orbitals must be doubly occupied (equal up and down counts)");
  }
}

bool OrbitalSet::is_analytic() const { return std::holds_alternative<GaussianOrbital>(entries_.front().orbital); }

const GridGeometry& OrbitalSet::geometry() const {
  if (is_analytic()) fail(ErrorKind::UnsupportedRepresentation, "orbital set is analytic and has no grid");
  return std::get<GridOrbital>(entries_.front().orbital).geometry;
}

std::vector<std::size_t> OrbitalSet::occupied() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i].occupied()) out.push_back(i);
  return out;
}

int OrbitalSet::count(SpinChannel spin, std::optional<Block> block) const {
  int n = 0;
  for (const auto& e : entries_) {
    if (e.occupied() && e.spin == spin && (!block || e.block == *block)) ++n;
  }
  return n;
}

OrbitalSet flip_occupation(const OrbitalSet& set, std::size_t index) {
  if (index >= set.size()) {
    fail(ErrorKind::InvalidInput, "flip_occupation: index " + std::to_string(index) + " out of range");
  }
  const auto& target = set[index];
  if (target.block != Block::I || target.spin != SpinChannel::Up || !target.occupied()) {
    fail(ErrorKind::InvalidInput,
         "flip_occupation: orbital " + std::to_string(index) + " is not an occupied block-I spin-up orbital");
  }
  std::vector<SpinOrbital> entries = set.entries();
  entries[index].spin = SpinChannel::Down;
  for (auto& e : entries) {
    if (e.polarized_by == index) e.spin = e.spin == SpinChannel::Up ? SpinChannel::Down : SpinChannel::Up;
  }
  return OrbitalSet(std::move(entries), set.S(), SpinQuantum::from_twice(set.mS().twice() - 2));
}

OrbitalSet to_grid(const OrbitalSet& set, const GridGeometry& geometry) {
  if (!set.is_analytic()) fail(ErrorKind::UnsupportedRepresentation, "to_grid: orbital set is already gridded");
  std::vector<SpinOrbital> entries = set.entries();
  for (auto& e : entries) e.orbital = normalize(sample(std::get<GaussianOrbital>(e.orbital), geometry));
  return OrbitalSet(std::move(entries), set.S(), set.mS());
}

OrbitalSet rotate(const OrbitalSet& set, const Matrix3& r) {
  if (!set.is_analytic()) fail(ErrorKind::UnsupportedRepresentation, "rotate: only analytic orbital sets can be rotated");
  std::vector<SpinOrbital> entries = set.entries();
  for (auto& e : entries) e.orbital = rotate(std::get<GaussianOrbital>(e.orbital), r);
  return OrbitalSet(std::move(entries), set.S(), set.mS());
}

}  // namespace zfs

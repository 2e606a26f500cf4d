#include <array>
#include <cmath>
#include <string>

#include "zfskit/error.hpp"
#include "zfskit/orbital_set.hpp"

namespace zfs {

namespace {

// Spectators sit 1.5 widths from their radical: first along the chain toward
// the other end, then on the perpendicular axes. Further shells move out by
// half a width each.
Vector3 spectator_offset(int slot, bool far_site, double width) {
  const std::array<Vector3, 5> dirs = {Vector3(0, 0, far_site ? -1.0 : 1.0), Vector3(1, 0, 0), Vector3(-1, 0, 0),
                                       Vector3(0, 1, 0), Vector3(0, -1, 0)};
  const int shell = slot / static_cast<int>(dirs.size());
  const double distance = width * (1.5 + 0.5 * shell);
  return distance * dirs[slot % dirs.size()];
}

}  // namespace

OrbitalSet build_biradical_model(const BiradicalModel& model) {
  if (!(model.separation > 0.0)) fail(ErrorKind::InvalidInput, "biradical separation must be positive");
  if (!(model.width > 0.0)) fail(ErrorKind::InvalidInput, "biradical width must be positive");
  if (model.spectator_pairs < 0) fail(ErrorKind::InvalidInput, "spectator pair count must be non-negative");
  if (!(model.contamination >= 0.0 && model.contamination <= 1.0)) {
    fail(ErrorKind::InvalidInput, "contamination must lie in [0, 1]");
  }

  const std::array<Vector3, 2> sites = {Vector3::Zero(), Vector3(0, 0, model.separation)};
  std::vector<SpinOrbital> entries;
  for (int s = 0; s < 2; ++s) {
    entries.push_back(SpinOrbital{GaussianOrbital::s(sites[s], model.width), SpinChannel::Up, 1, Block::I,
                                  std::nullopt, "radical-" + std::to_string(s)});
  }
  for (int j = 0; j < model.spectator_pairs; ++j) {
    const int site = j % 2;
    const Vector3 center = sites[site] + spectator_offset(j / 2, site == 1, model.width);
    const std::string tag = "spectator-" + std::to_string(j);
    const GaussianOrbital up = GaussianOrbital::s(center, model.width);
    const GaussianOrbital down = GaussianOrbital::s(center, model.width * (1.0 + model.contamination));
    entries.push_back(SpinOrbital{up, SpinChannel::Up, 1, Block::II, static_cast<std::size_t>(site), tag + "-up"});
    entries.push_back(SpinOrbital{down, SpinChannel::Down, 1, Block::II, static_cast<std::size_t>(site), tag + "-down"});
  }
  return OrbitalSet(std::move(entries), SpinQuantum::from_twice(2), SpinQuantum::from_twice(2));
}

}  // namespace zfs

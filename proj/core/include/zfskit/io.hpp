#pragma once

#include <filesystem>

#include "zfskit/grid.hpp"
#include "zfskit/orbital_set.hpp"

namespace zfs {

/// Reads a single-block Gaussian cube file as a wavefunction and normalizes it.
/// Negative voxel counts select Angstrom units, which are converted to Bohr.
/// The cell is periodic and spans n_i voxel steps along each axis.
/// Throws Parse errors carrying "path:line".
GridOrbital load_cube(const std::filesystem::path& path);

/// Writes values in Bohr units with 16 significant digits.
void write_cube(const GridOrbital& orbital, const std::filesystem::path& path);

/// Orbital-set manifest (JSON):
///   { "schema_version": 1, "S": 1, "mS": 1,
///     "orbitals": [ { "cube": "a.cube" | "gaussian": [terms...],
///                     "spin": "up", "occupancy": 1, "block": "I",
///                     "polarized_by": 0, "label": "..." }, ... ] }
/// Cube paths are resolved relative to the manifest's directory.
OrbitalSet load_manifest(const std::filesystem::path& path);

/// Writes analytic orbitals inline; grid orbitals are written next to the
/// manifest as <stem>_orbNN.cube.
void write_manifest(const OrbitalSet& set, const std::filesystem::path& path);

inline constexpr int manifest_schema_version = 1;

}  // namespace zfs

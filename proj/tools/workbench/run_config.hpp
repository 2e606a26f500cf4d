#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "config_file.hpp"
#include "zfskit/zfskit.hpp"

namespace zfs::cli {

/// Periodic cubic cell used to sample analytic inputs onto a grid.
struct GridSpec {
  int points = 48;
  double edge = 24.0;  // Bohr
};

struct ScanSpec {
  double from = 10.0;
  double to = 60.0;
  int steps = 11;
  std::vector<std::string> columns;
};

/// Everything a subcommand needs, merged from the config file and the flags
/// (flags win).
struct RunConfig {
  std::optional<std::filesystem::path> manifest;  // otherwise the builtin biradical model
  BiradicalModel model;
  std::optional<GridSpec> grid;
  std::string label;

  EngineConfig engine;

  bool correction = false;
  bool auto_flip = false;
  std::vector<std::filesystem::path> low_spin;
  std::string group = "C1";  // C1, C3, C3v or custom (group_file)
  Vector3 axis = Vector3::UnitZ();
  std::optional<std::filesystem::path> group_file;
  std::vector<double> weights;

  std::optional<std::filesystem::path> output;
  std::optional<std::filesystem::path> pairs;

  ScanSpec scan;
};

/// Reads a TOML-style config. Relative paths are resolved against the
/// config file's directory.
void apply_config_file(const ConfigFile& file, RunConfig& rc);

/// Loads the high-spin set named by the config (manifest or builtin model),
/// sampled on the grid when one is requested.
OrbitalSet load_input(const RunConfig& rc);

/// Samples an analytic set on `spec`, centered on its orbital centers.
OrbitalSet grid_input(const OrbitalSet& set, const GridSpec& spec);

/// Resolves the named or file-based symmetry group.
SymmetryGroup resolve_group(const RunConfig& rc);

/// Reads a JSON list of 3x3 row-major matrices.
SymmetryGroup load_group_file(const std::filesystem::path& path);

}  // namespace zfs::cli

#include "run_config.hpp"

#include <fstream>
#include <set>

#include "json.hpp"

namespace zfs::cli {

namespace {

const std::set<std::string> kKnownKeys = {
    "input.manifest",     "input.label",      "model.separation",   "model.width",       "model.spectators",
    "model.contamination", "grid.points",     "grid.edge",          "engine.path",       "engine.exchange",
    "engine.cutoff",      "engine.screening", "engine.unit",        "correction.enabled", "correction.low_spin",
    "correction.group",   "correction.axis",  "correction.group_file", "correction.weights", "output.path",
    "output.pairs",       "scan.from",        "scan.to",            "scan.steps",        "scan.columns",
};

std::filesystem::path resolve(const ConfigFile& f, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() || f.base().empty() ? path : f.base() / path;
}

template <class Parse>
auto parse_key(const std::string& key, const std::string& text, Parse parse) {
  try {
    return parse(text);
  } catch (const Error& e) {
    fail(ErrorKind::Config, "config key " + key + ": " + e.what());
  }
}

Vector3 centroid(const OrbitalSet& set) {
  Vector3 sum = Vector3::Zero();
  int n = 0;
  for (const auto& e : set.entries()) {
    for (const auto& t : std::get<GaussianOrbital>(e.orbital).terms) {
      sum += t.center;
      ++n;
    }
  }
  return n ? Vector3(sum / n) : Vector3::Zero();
}

}  // namespace

void apply_config_file(const ConfigFile& f, RunConfig& rc) {
  f.reject_unknown(kKnownKeys);
  if (auto v = f.string("input.manifest")) rc.manifest = resolve(f, *v);
  if (auto v = f.string("input.label")) rc.label = *v;
  if (auto v = f.number("model.separation")) rc.model.separation = *v;
  if (auto v = f.number("model.width")) rc.model.width = *v;
  if (auto v = f.integer("model.spectators")) rc.model.spectator_pairs = *v;
  if (auto v = f.number("model.contamination")) rc.model.contamination = *v;
  if (f.has("grid.points") || f.has("grid.edge")) {
    GridSpec g;
    if (auto v = f.integer("grid.points")) g.points = *v;
    if (auto v = f.number("grid.edge")) g.edge = *v;
    rc.grid = g;
  }
  if (auto v = f.string("engine.path")) rc.engine.path = parse_key("engine.path", *v, parse_kernel_path);
  if (auto v = f.string("engine.exchange")) {
    rc.engine.exchange_scope = parse_key("engine.exchange", *v, parse_exchange_scope);
  }
  if (auto v = f.number("engine.cutoff")) rc.engine.cutoff = *v;
  if (auto v = f.number("engine.screening")) rc.engine.screening = *v;
  if (auto v = f.string("engine.unit")) rc.engine.unit = parse_key("engine.unit", *v, parse_energy_unit);
  if (auto v = f.boolean("correction.enabled")) rc.correction = *v;
  if (auto v = f.strings("correction.low_spin")) {
    if (v->size() == 1 && (*v)[0] == "auto-flip") {
      rc.auto_flip = true;
    } else {
      for (const auto& p : *v) rc.low_spin.push_back(resolve(f, p));
    }
  }
  if (auto v = f.string("correction.group")) rc.group = *v;
  if (auto v = f.numbers("correction.axis")) {
    if (v->size() != 3) fail(ErrorKind::Config, "config key correction.axis: expected three numbers");
    rc.axis = Vector3((*v)[0], (*v)[1], (*v)[2]);
  }
  if (auto v = f.string("correction.group_file")) rc.group_file = resolve(f, *v);
  if (auto v = f.numbers("correction.weights")) rc.weights = *v;
  if (auto v = f.string("output.path")) rc.output = resolve(f, *v);
  if (auto v = f.string("output.pairs")) rc.pairs = resolve(f, *v);
  if (auto v = f.number("scan.from")) rc.scan.from = *v;
  if (auto v = f.number("scan.to")) rc.scan.to = *v;
  if (auto v = f.integer("scan.steps")) rc.scan.steps = *v;
  if (auto v = f.strings("scan.columns")) rc.scan.columns = *v;
}

OrbitalSet grid_input(const OrbitalSet& set, const GridSpec& spec) {
  if (spec.points < 2) fail(ErrorKind::Config, "grid points must be at least 2");
  if (!(spec.edge > 0.0)) fail(ErrorKind::Config, "grid edge must be positive");
  if (!set.is_analytic()) fail(ErrorKind::Config, "a grid was requested but the input is already gridded");
  GridGeometry g = cubic_cell(spec.edge, spec.points);
  g.origin = centroid(set) - Vector3::Constant(0.5 * spec.edge);
  return to_grid(set, g);
}

OrbitalSet load_input(const RunConfig& rc) {
  OrbitalSet set = rc.manifest ? load_manifest(*rc.manifest) : build_biradical_model(rc.model);
  if (rc.grid) return grid_input(set, *rc.grid);
  return set;
}

SymmetryGroup load_group_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Config, path.string() + ": cannot open symmetry group file");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::Parse, path.string() + ": " + e.what());
  }
  if (!doc.is_array() || doc.empty()) fail(ErrorKind::Parse, path.string() + ": expected a list of 3x3 matrices");
  std::vector<Matrix3> ops;
  for (std::size_t k = 0; k < doc.size(); ++k) {
    const auto& m = doc[k];
    Matrix3 r;
    if (!m.is_array() || m.size() != 3) fail(ErrorKind::Parse, path.string() + ": matrix " + std::to_string(k) + " is not 3x3");
    for (int i = 0; i < 3; ++i) {
      if (!m[i].is_array() || m[i].size() != 3) {
        fail(ErrorKind::Parse, path.string() + ": matrix " + std::to_string(k) + " is not 3x3");
      }
      for (int j = 0; j < 3; ++j) {
        if (!m[i][j].is_number()) fail(ErrorKind::Parse, path.string() + ": non-numeric matrix entry");
        r(i, j) = m[i][j].get<double>();
      }
    }
    ops.push_back(r);
  }
  try {
    return SymmetryGroup(std::move(ops));
  } catch (const Error& e) {
    fail(ErrorKind::Config, path.string() + ": " + e.what());
  }
}

SymmetryGroup resolve_group(const RunConfig& rc) {
  if (rc.group_file) return load_group_file(*rc.group_file);
  if (!(rc.axis.norm() > 0.0)) fail(ErrorKind::Config, "--axis must be a non-zero vector");
  if (rc.group == "C1") return SymmetryGroup::identity();
  if (rc.group == "C3") return SymmetryGroup::c3(rc.axis);
  if (rc.group == "C3v") return SymmetryGroup::c3v(rc.axis);
  fail(ErrorKind::Config, "unknown symmetry group '" + rc.group + "' (C1, C3, C3v, or --group-file)");
}

}  // namespace zfs::cli

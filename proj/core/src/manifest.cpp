#include <cstdio>
#include <fstream>
#include <string>

#include "json.hpp"

#include "zfskit/error.hpp"
#include "zfskit/io.hpp"

namespace zfs {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void bad(const std::filesystem::path& path, const std::string& where, const std::string& what) {
  fail(ErrorKind::Parse, path.string() + ": " + where + ": " + what);
}

const json& field(const std::filesystem::path& path, const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) bad(path, where, std::string("missing \"") + key + "\"");
  return *it;
}

double number(const std::filesystem::path& path, const json& v, const std::string& where) {
  if (!v.is_number()) bad(path, where, "expected a number");
  return v.get<double>();
}

std::string text(const std::filesystem::path& path, const json& v, const std::string& where) {
  if (!v.is_string()) bad(path, where, "expected a string");
  return v.get<std::string>();
}

Angular parse_angular(const std::filesystem::path& path, const std::string& s, const std::string& where) {
  if (s == "s") return Angular::S;
  if (s == "px") return Angular::Px;
  if (s == "py") return Angular::Py;
  if (s == "pz") return Angular::Pz;
  bad(path, where, "angular part \"" + s + "\" is not supported (s, px, py, pz)");
}

const char* angular_name(Angular a) {
  switch (a) {
    case Angular::S: return "s";
    case Angular::Px: return "px";
    case Angular::Py: return "py";
    case Angular::Pz: return "pz";
  }
  return "s";
}

GaussianOrbital parse_gaussian(const std::filesystem::path& path, const json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) bad(path, where, "\"gaussian\" must be a non-empty array of terms");
  GaussianOrbital g;
  for (std::size_t t = 0; t < v.size(); ++t) {
    const std::string w = where + ".gaussian[" + std::to_string(t) + "]";
    const json& term = v[t];
    if (!term.is_object()) bad(path, w, "expected an object");
    GaussianTerm gt;
    gt.coefficient = term.contains("coefficient") ? number(path, term["coefficient"], w + ".coefficient") : 1.0;
    gt.width = number(path, field(path, term, "width", w), w + ".width");
    const json& c = field(path, term, "center", w);
    if (!c.is_array() || c.size() != 3) bad(path, w + ".center", "expected three numbers");
    for (int k = 0; k < 3; ++k) gt.center[k] = number(path, c[k], w + ".center");
    gt.angular = term.contains("angular") ? parse_angular(path, text(path, term["angular"], w), w) : Angular::S;
    g.terms.push_back(gt);
  }
  return g;
}

SpinQuantum spin_quantum(const std::filesystem::path& path, const json& v, const char* key) {
  const double x = number(path, v, key);
  try {
    return SpinQuantum::from_value(x);
  } catch (const Error& e) {
    bad(path, key, e.what());
  }
}

}  // namespace

OrbitalSet load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Parse, path.string() + ": cannot open manifest");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::Parse, path.string() + ": " + e.what());
  }
  if (!doc.is_object()) bad(path, "top level", "expected an object");
  if (doc.contains("schema_version")) {
    const json& sv = doc["schema_version"];
    if (!sv.is_number_integer() || sv.get<int>() != manifest_schema_version) {
      bad(path, "schema_version", "unsupported version, expected " + std::to_string(manifest_schema_version));
    }
  }
  const SpinQuantum S = spin_quantum(path, field(path, doc, "S", "top level"), "S");
  const SpinQuantum mS = doc.contains("mS") ? spin_quantum(path, doc["mS"], "mS") : S;
  const json& list = field(path, doc, "orbitals", "top level");
  if (!list.is_array()) bad(path, "orbitals", "expected an array");

  const std::filesystem::path base = path.parent_path();
  std::vector<SpinOrbital> entries;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string w = "orbitals[" + std::to_string(i) + "]";
    const json& o = list[i];
    if (!o.is_object()) bad(path, w, "expected an object");
    SpinOrbital e;
    const bool has_cube = o.contains("cube");
    const bool has_gauss = o.contains("gaussian");
    if (has_cube == has_gauss) bad(path, w, "exactly one of \"cube\" or \"gaussian\" is required");
    if (has_cube) {
      const std::filesystem::path cube = text(path, o["cube"], w + ".cube");
      e.orbital = load_cube(cube.is_absolute() ? cube : base / cube);
    } else {
      try {
        e.orbital = normalize(parse_gaussian(path, o["gaussian"], w));
      } catch (const Error& err) {
        if (err.kind() == ErrorKind::Parse) throw;
        bad(path, w, err.what());
      }
    }
    try {
      e.spin = parse_spin_channel(text(path, field(path, o, "spin", w), w + ".spin"));
      e.block = parse_block(text(path, field(path, o, "block", w), w + ".block"));
    } catch (const Error& err) {
      if (err.kind() == ErrorKind::Parse) throw;
      bad(path, w, err.what());
    }
    const json& occ = field(path, o, "occupancy", w);
    if (!occ.is_number_integer() || (occ.get<int>() != 0 && occ.get<int>() != 1)) {
      bad(path, w + ".occupancy", "expected 0 or 1");
    }
    e.occupancy = occ.get<int>();
    if (o.contains("polarized_by") && !o["polarized_by"].is_null()) {
      const json& p = o["polarized_by"];
      if (!p.is_number_unsigned()) bad(path, w + ".polarized_by", "expected an orbital index");
      e.polarized_by = p.get<std::size_t>();
    }
    e.label = text(path, field(path, o, "label", w), w + ".label");
    entries.push_back(std::move(e));
  }
  return OrbitalSet(std::move(entries), S, mS);
}

void write_manifest(const OrbitalSet& set, const std::filesystem::path& path) {
  ordered_json doc;
  doc["schema_version"] = manifest_schema_version;
  doc["S"] = set.S().value();
  doc["mS"] = set.mS().value();
  ordered_json list = ordered_json::array();
  const std::filesystem::path base = path.parent_path();
  for (std::size_t i = 0; i < set.size(); ++i) {
    const SpinOrbital& e = set[i];
    ordered_json o;
    if (const auto* g = std::get_if<GaussianOrbital>(&e.orbital)) {
      ordered_json terms = ordered_json::array();
      for (const auto& t : g->terms) {
        terms.push_back({{"coefficient", t.coefficient},
                         {"center", {t.center.x(), t.center.y(), t.center.z()}},
                         {"width", t.width},
                         {"angular", angular_name(t.angular)}});
      }
      o["gaussian"] = terms;
    } else {
      char name[32];
      std::snprintf(name, sizeof name, "_orb%02zu.cube", i);
      const std::string file = path.stem().string() + name;
      write_cube(std::get<GridOrbital>(e.orbital), base / file);
      o["cube"] = file;
    }
    o["spin"] = std::string(to_string(e.spin));
    o["occupancy"] = e.occupancy;
    o["block"] = std::string(to_string(e.block));
    if (e.polarized_by) o["polarized_by"] = *e.polarized_by;
    o["label"] = e.label;
    list.push_back(o);
  }
  doc["orbitals"] = list;
  std::ofstream out(path);
  if (!out) fail(ErrorKind::Resource, path.string() + ": cannot open for writing");
  out << doc.dump(2) << '\n';
  if (!out) fail(ErrorKind::Resource, path.string() + ": write failed");
}

}  // namespace zfs

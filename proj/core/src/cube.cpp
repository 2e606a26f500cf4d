#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "zfskit/error.hpp"
#include "zfskit/io.hpp"

namespace zfs {

namespace {

class CubeReader {
 public:
  explicit CubeReader(const std::filesystem::path& path) : path_(path), in_(path) {
    if (!in_) fail(ErrorKind::Parse, path.string() + ": cannot open cube file");
  }

  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorKind::Parse, path_.string() + ":" + std::to_string(line_no_) + ": " + what);
  }

  std::string line(const char* section) {
    std::string s;
    if (!std::getline(in_, s)) {
      ++line_no_;
      error(std::string("unexpected end of file, missing ") + section);
    }
    ++line_no_;
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
  }

  std::vector<double> numbers(const char* section, std::size_t at_least) {
    const std::string s = line(section);
    std::vector<double> out = split(s);
    if (out.size() < at_least) error(std::string("malformed ") + section);
    return out;
  }

  // Values may wrap across lines freely; reads exactly n of them.
  std::vector<double> values(std::size_t n) {
    std::vector<double> out;
    out.reserve(n);
    std::string s;
    while (out.size() < n) {
      if (!std::getline(in_, s)) {
        ++line_no_;
        error("unexpected end of file, missing volumetric data (" + std::to_string(out.size()) + " of " +
              std::to_string(n) + " values)");
      }
      ++line_no_;
      for (double v : split(s)) {
        if (out.size() == n) error("more volumetric values than the grid holds");
        out.push_back(v);
      }
    }
    while (std::getline(in_, s)) {
      ++line_no_;
      if (s.find_first_not_of(" \t\r") != std::string::npos) error("more volumetric values than the grid holds");
    }
    return out;
  }

 private:
  std::vector<double> split(const std::string& s) const {
    std::vector<double> out;
    const char* p = s.data();
    const char* end = p + s.size();
    while (p < end) {
      while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
      if (p == end) break;
      const char* tok = p;
      while (p < end && !(*p == ' ' || *p == '\t' || *p == '\r')) ++p;
      const std::string text(tok, p);
      if (*tok == '+') ++tok;
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(tok, p, v);
      if (ec != std::errc() || ptr != p) error("cannot parse number '" + text + "'");
      if (!std::isfinite(v)) error("non-finite value '" + text + "'");
      out.push_back(v);
    }
    return out;
  }

  std::filesystem::path path_;
  std::ifstream in_;
  int line_no_ = 0;
};

int as_count(CubeReader& r, double v, const char* what) {
  if (v != std::floor(v) || std::abs(v) > 1e7) r.error(std::string("non-integer ") + what);
  return static_cast<int>(v);
}

}  // namespace

GridOrbital load_cube(const std::filesystem::path& path) {
  CubeReader r(path);
  GridOrbital orb;
  orb.metadata.comment1 = r.line("first comment line");
  orb.metadata.comment2 = r.line("second comment line");

  const std::vector<double> head = r.numbers("atom count and origin", 4);
  const int natoms_signed = as_count(r, head[0], "atom count");
  if (head.size() > 4 && head[4] != 1.0) r.error("only one value per voxel is supported");
  Vector3 origin(head[1], head[2], head[3]);

  std::array<int, 3> counts{};
  Matrix3 steps;
  int negative = 0;
  for (int a = 0; a < 3; ++a) {
    const std::vector<double> ax = r.numbers("axis line (three are required)", 4);
    counts[a] = as_count(r, ax[0], "voxel count");
    if (counts[a] == 0) r.error("voxel count must be non-zero");
    if (counts[a] < 0) ++negative;
    steps.row(a) = Vector3(ax[1], ax[2], ax[3]);
  }
  if (negative != 0 && negative != 3) r.error("mixed Bohr/Angstrom voxel count signs");
  const double scale = negative == 3 ? 1.0 / constants::bohr_in_angstrom : 1.0;

  const int natoms = std::abs(natoms_signed);
  for (int i = 0; i < natoms; ++i) {
    const std::vector<double> a = r.numbers("atom line", 5);
    orb.metadata.atoms.push_back(
        CubeAtom{as_count(r, a[0], "atomic number"), a[1], scale * Vector3(a[2], a[3], a[4])});
  }
  if (natoms_signed < 0) {
    const std::vector<double> ids = r.numbers("orbital id line", 1);
    if (ids[0] != 1.0) r.error("only single-orbital cube files are supported");
  }

  GridGeometry& g = orb.geometry;
  for (int a = 0; a < 3; ++a) {
    g.shape[a] = std::abs(counts[a]);
    g.cell.row(a) = scale * g.shape[a] * steps.row(a);
  }
  g.origin = scale * origin;
  g.periodic = true;
  if (std::abs(g.cell.determinant()) <= 0.0) r.error("degenerate axis vectors");

  orb.values = r.values(g.size());
  return normalize(orb);
}

void write_cube(const GridOrbital& orbital, const std::filesystem::path& path) {
  const GridGeometry& g = orbital.geometry;
  g.validate();
  if (orbital.values.size() != g.size()) fail(ErrorKind::InvalidInput, "write_cube: value count does not match grid");
  std::ofstream out(path);
  if (!out) fail(ErrorKind::Resource, path.string() + ": cannot open for writing");

  auto comment = [](const std::string& s, const char* fallback) {
    std::string c = s.empty() ? fallback : s;
    for (char& ch : c) {
      if (ch == '\n' || ch == '\r') ch = ' ';
    }
    return c;
  };
  out << comment(orbital.metadata.comment1, "zfskit orbital") << '\n';
  out << comment(orbital.metadata.comment2, "wavefunction, Bohr units") << '\n';

  char buf[160];
  const Matrix3 steps = g.steps();
  std::snprintf(buf, sizeof buf, "%5d %.15E %.15E %.15E\n", static_cast<int>(orbital.metadata.atoms.size()),
                g.origin.x(), g.origin.y(), g.origin.z());
  out << buf;
  for (int a = 0; a < 3; ++a) {
    std::snprintf(buf, sizeof buf, "%5d %.15E %.15E %.15E\n", g.shape[a], steps(a, 0), steps(a, 1), steps(a, 2));
    out << buf;
  }
  for (const auto& atom : orbital.metadata.atoms) {
    std::snprintf(buf, sizeof buf, "%5d %.15E %.15E %.15E %.15E\n", atom.atomic_number, atom.charge,
                  atom.position.x(), atom.position.y(), atom.position.z());
    out << buf;
  }

  // One row of n3 values per (i, j), wrapped at six per line.
  const std::size_t n3 = static_cast<std::size_t>(g.shape[2]);
  for (std::size_t row = 0; row < orbital.values.size(); row += n3) {
    for (std::size_t k = 0; k < n3; ++k) {
      std::snprintf(buf, sizeof buf, " %.15E", orbital.values[row + k]);
      out << buf;
      if (k % 6 == 5 || k + 1 == n3) out << '\n';
    }
  }
  if (!out) fail(ErrorKind::Resource, path.string() + ": write failed");
}

}  // namespace zfs

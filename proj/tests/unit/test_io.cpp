#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "test_support.hpp"
#include "zfskit/io.hpp"
#include "zfskit/orbital_set.hpp"

using namespace zfs;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    path_ = fs::temp_directory_path() / (std::string("zfskit_io_") + info->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

void write_text(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

// 2x2x3 grid, steps 0.5 Bohr (or Angstrom with negative counts)
std::string small_cube(int sign, const std::string& values) {
  const std::string s = sign < 0 ? "-" : "";
  return "comment one\ncomment two\n"
         "    1    0.0    0.0    0.0\n" +
         s + "2    0.5    0.0    0.0\n" + s + "2    0.0    0.5    0.0\n" + s +
         "3    0.0    0.0    0.5\n"
         "    8    8.0    0.1    0.2    0.3\n" +
         values;
}

const char* kValues = " 1.0 2.0 3.0 4.0 5.0 6.0\n 7.0 8.0 9.0 10.0 11.0 12.0\n";

}  // namespace

TEST(Cube, ReadsHeaderAndNormalizes) {
  TempDir dir;
  write_text(dir / "a.cube", small_cube(1, kValues));
  const GridOrbital g = load_cube(dir / "a.cube");
  EXPECT_EQ(g.geometry.shape, (std::array<int, 3>{2, 2, 3}));
  EXPECT_NEAR(g.geometry.cell(0, 0), 1.0, 1e-15);
  EXPECT_NEAR(g.geometry.cell(2, 2), 1.5, 1e-15);
  EXPECT_TRUE(g.geometry.periodic);
  EXPECT_NEAR(g.norm_squared(), 1.0, 1e-14);
  ASSERT_EQ(g.metadata.atoms.size(), 1u);
  EXPECT_EQ(g.metadata.atoms[0].atomic_number, 8);
  EXPECT_EQ(g.metadata.comment1, "comment one");
  // k fastest: value index 1 is (0,0,1)
  EXPECT_NEAR(g.values[1] / g.values[0], 2.0, 1e-14);
}

TEST(Cube, AngstromCountsAreConverted) {
  TempDir dir;
  write_text(dir / "a.cube", small_cube(-1, kValues));
  const GridOrbital g = load_cube(dir / "a.cube");
  EXPECT_NEAR(g.geometry.cell(0, 0), 1.0 / constants::bohr_in_angstrom, 1e-12);
  EXPECT_NEAR(g.metadata.atoms[0].position.x(), 0.1 / constants::bohr_in_angstrom, 1e-12);
}

TEST(Cube, RoundTripIsExact) {
  TempDir dir;
  const auto orb = normalize(sample(GaussianOrbital{{GaussianTerm{1.0, Vector3(1.1, 0.9, 1.3), 0.7, Angular::Pz}}},
                                    [] {
                                      GridGeometry g = cubic_cell(2.4, 12);
                                      g.cell(0, 1) = 0.3;
                                      return g;
                                    }()));
  write_cube(orb, dir / "b.cube");
  const GridOrbital back = load_cube(dir / "b.cube");
  EXPECT_EQ(back.geometry.shape, orb.geometry.shape);
  EXPECT_LE(max_abs_diff(back.geometry.cell, orb.geometry.cell), 1e-13);
  EXPECT_LE((back.geometry.origin - orb.geometry.origin).norm(), 1e-13);
  ASSERT_EQ(back.values.size(), orb.values.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < orb.values.size(); ++i) worst = std::max(worst, std::abs(back.values[i] - orb.values[i]));
  EXPECT_LE(worst, 1e-12);
}

TEST(Cube, TruncatedFileReportsLine) {
  TempDir dir;
  write_text(dir / "t.cube", small_cube(1, " 1.0 2.0 3.0 4.0 5.0 6.0\n 7.0 8.0\n"));
  try {
    load_cube(dir / "t.cube");
    FAIL() << "expected a parse error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Parse);
    EXPECT_NE(std::string(e.what()).find("t.cube:"), std::string::npos) << e.what();
  }
}

TEST(Cube, RejectsNonFiniteAndBadHeaders) {
  TempDir dir;
  write_text(dir / "n.cube", small_cube(1, " 1.0 2.0 nan 4.0 5.0 6.0\n 7.0 8.0 9.0 10.0 11.0 12.0\n"));
  try {
    load_cube(dir / "n.cube");
    FAIL() << "expected a parse error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Parse);
    EXPECT_NE(std::string(e.what()).find("n.cube:8"), std::string::npos) << e.what();
  }
  write_text(dir / "m.cube", "a\nb\n 0 0 0 0\n-2 0.5 0 0\n2 0 0.5 0\n3 0 0 0.5\n");
  expect_error_kind([&] { load_cube(dir / "m.cube"); }, ErrorKind::Parse);
  write_text(dir / "x.cube", small_cube(1, kValues + std::string(" 13.0\n")));
  expect_error_kind([&] { load_cube(dir / "x.cube"); }, ErrorKind::Parse);
  expect_error_kind([&] { load_cube(dir / "missing.cube"); }, ErrorKind::Parse);
}

TEST(Manifest, AnalyticRoundTrip) {
  TempDir dir;
  BiradicalModel m;
  m.spectator_pairs = 2;
  m.contamination = 0.25;
  const OrbitalSet set = build_biradical_model(m);
  write_manifest(set, dir / "set.json");
  const OrbitalSet back = load_manifest(dir / "set.json");
  ASSERT_EQ(back.size(), set.size());
  EXPECT_EQ(back.S(), set.S());
  EXPECT_EQ(back.mS(), set.mS());
  for (std::size_t i = 0; i < set.size(); ++i) {
    EXPECT_EQ(back[i].spin, set[i].spin);
    EXPECT_EQ(back[i].block, set[i].block);
    EXPECT_EQ(back[i].polarized_by, set[i].polarized_by);
    EXPECT_EQ(back[i].label, set[i].label);
    const auto& a = std::get<GaussianOrbital>(set[i].orbital);
    const auto& b = std::get<GaussianOrbital>(back[i].orbital);
    ASSERT_EQ(a.terms.size(), b.terms.size());
    for (std::size_t t = 0; t < a.terms.size(); ++t) {
      EXPECT_NEAR(a.terms[t].coefficient, b.terms[t].coefficient, 1e-14);
      EXPECT_NEAR((a.terms[t].center - b.terms[t].center).norm(), 0.0, 1e-14);
      EXPECT_NEAR(a.terms[t].width, b.terms[t].width, 1e-14);
    }
  }
}

TEST(Manifest, GridRoundTripWritesCubes) {
  TempDir dir;
  BiradicalModel m;
  m.separation = 3.0;
  const OrbitalSet set = to_grid(build_biradical_model(m), cubic_cell(10.0, 10));
  write_manifest(set, dir / "g.json");
  EXPECT_TRUE(fs::exists(dir / "g_orb00.cube"));
  const OrbitalSet back = load_manifest(dir / "g.json");
  EXPECT_FALSE(back.is_analytic());
  EXPECT_TRUE(back.geometry() == set.geometry());
}

TEST(Manifest, ReportsFieldErrors) {
  TempDir dir;
  const std::string head = R"({"schema_version": 1, "S": 1, "mS": 1, "orbitals": [)";
  const std::string ok =
      R"({"gaussian": [{"coefficient": 1, "center": [0,0,0], "width": 1, "angular": "s"}], "spin": "up", "occupancy": 1, "block": "I", "label": "x"})";
  const std::string ok2 =
      R"({"gaussian": [{"coefficient": 1, "center": [0,0,4], "width": 1, "angular": "s"}], "spin": "up", "occupancy": 1, "block": "I", "label": "x"})";
  write_text(dir / "good.json", head + ok + "," + ok2 + "]}");
  EXPECT_EQ(load_manifest(dir / "good.json").size(), 2u);

  const std::string d_orbital =
      R"({"gaussian": [{"coefficient": 1, "center": [0,0,4], "width": 1, "angular": "dxy"}], "spin": "up", "occupancy": 1, "block": "I", "label": "x"})";
  write_text(dir / "d.json", head + ok + "," + d_orbital + "]}");
  try {
    load_manifest(dir / "d.json");
    FAIL() << "expected a parse error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Parse);
    EXPECT_NE(std::string(e.what()).find("orbitals[1]"), std::string::npos) << e.what();
  }
  write_text(dir / "v.json", R"({"schema_version": 2, "S": 1, "mS": 1, "orbitals": []})");
  expect_error_kind([&] { load_manifest(dir / "v.json"); }, ErrorKind::Parse);
  write_text(dir / "j.json", head + ok);
  expect_error_kind([&] { load_manifest(dir / "j.json"); }, ErrorKind::Parse);
  write_text(dir / "c.json", head + R"({"cube": "nope.cube", "spin": "up", "occupancy": 1, "block": "I", "label": "c"}]})");
  expect_error_kind([&] { load_manifest(dir / "c.json"); }, ErrorKind::Parse);
  std::string twice = ok2;
  twice.replace(twice.find("\"occupancy\": 1"), 15, "\"occupancy\": 2");
  write_text(dir / "o.json", head + ok + "," + twice + "]}");
  expect_error_kind([&] { load_manifest(dir / "o.json"); }, ErrorKind::Parse);
}

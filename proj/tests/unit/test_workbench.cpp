#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "reference.hpp"
#include "test_support.hpp"

using namespace zfs;
using namespace zfs::cli;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    path_ = fs::temp_directory_path() / (std::string("zfskit_wb_") + info->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

OrbitalSet triangle_quartet(double side) {
  const double r = side / std::sqrt(3.0);
  std::vector<SpinOrbital> e;
  for (int k = 0; k < 3; ++k) {
    const double a = 2.0 * M_PI * k / 3.0;
    e.push_back(SpinOrbital{GaussianOrbital::s(Vector3(r * std::cos(a), r * std::sin(a), 0.0), 1.0), SpinChannel::Up,
                            1, Block::I, std::nullopt, "r" + std::to_string(k)});
  }
  return OrbitalSet(std::move(e), SpinQuantum::from_twice(3), SpinQuantum::from_twice(3));
}

int run_cli(std::vector<const char*> args, std::string* out_text = nullptr) {
  args.insert(args.begin(), "zfskit");
  std::ostringstream out, err;
  const int code = run(static_cast<int>(args.size()), args.data(), out, err);
  if (out_text) *out_text = out.str();
  return code;
}

}  // namespace

TEST(ConfigFile, ParsesSubset) {
  const auto f = ConfigFile::parse_text(
      "# run\n[input]\nlabel = \"a # b\"  # trailing\n[model]\nseparation = 1.5e1\nspectators = 2\n"
      "[correction]\nenabled = true\naxis = [0, 0, 1]\nlow_spin = [\"x.json\", \"y.json\"]\n",
      "cfg.toml");
  EXPECT_EQ(f.string("input.label"), "a # b");
  EXPECT_EQ(f.number("model.separation"), 15.0);
  EXPECT_EQ(f.integer("model.spectators"), 2);
  EXPECT_EQ(f.boolean("correction.enabled"), true);
  EXPECT_EQ(f.numbers("correction.axis")->size(), 3u);
  EXPECT_EQ(f.strings("correction.low_spin")->at(1), "y.json");
  EXPECT_FALSE(f.has("model.width"));
}

TEST(ConfigFile, ErrorsNameTheLine) {
  for (const char* text : {"[model]\nseparation = \n", "[model\n", "[model]\nseparation = \"x\n", "key 3\n"}) {
    try {
      ConfigFile::parse_text(text, "bad.toml");
      ADD_FAILURE() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::Config);
      EXPECT_NE(std::string(e.what()).find("bad.toml:"), std::string::npos) << e.what();
    }
  }
  const auto f = ConfigFile::parse_text("[model]\nseparation = \"far\"\n", "t.toml");
  expect_error_kind([&] { f.number("model.separation"); }, ErrorKind::Config);
  RunConfig rc;
  const auto unknown = ConfigFile::parse_text("[model]\nseperation = 3\n", "u.toml");
  expect_error_kind([&] { apply_config_file(unknown, rc); }, ErrorKind::Config);
}

TEST(RunConfig, ConfigFileFillsFields) {
  RunConfig rc;
  apply_config_file(ConfigFile::parse_text("[model]\nseparation = 7\ncontamination = 0.2\n[engine]\nunit = \"cm-1\"\n"
                                           "[grid]\npoints = 20\n[correction]\nlow_spin = \"auto-flip\"\n",
                                           "c.toml"),
                    rc);
  EXPECT_EQ(rc.model.separation, 7.0);
  EXPECT_EQ(rc.engine.unit, EnergyUnit::InvCm);
  ASSERT_TRUE(rc.grid);
  EXPECT_EQ(rc.grid->points, 20);
  EXPECT_EQ(rc.grid->edge, 24.0);
  EXPECT_TRUE(rc.auto_flip);
}

TEST(Compute, DeterministicAndAxial) {
  RunConfig rc;
  rc.model.separation = 9.0;
  rc.model.spectator_pairs = 2;
  const Json a = compute_document(rc);
  const Json b = compute_document(rc);
  EXPECT_EQ(a.dump(), b.dump());
  EXPECT_EQ(a["kind"], "compute");
  EXPECT_LE(std::abs(a["D_uncorrected"]["parameters"]["E"].get<double>()), 1e-6);
  EXPECT_LT(a["D_uncorrected"]["parameters"]["D"].get<double>(), 0.0);
  EXPECT_EQ(a["blocks"].size(), 3u);
}

TEST(Compute, DoubletReportsZeroWithWarning) {
  TempDir dir;
  const OrbitalSet doublet({SpinOrbital{GaussianOrbital::s(Vector3::Zero(), 1.0), SpinChannel::Up, 1, Block::I, {}, ""}},
                           SpinQuantum::from_twice(1), SpinQuantum::from_twice(1));
  write_manifest(doublet, dir / "d.json");
  RunConfig rc;
  rc.manifest = dir / "d.json";
  const Json doc = compute_document(rc);
  EXPECT_EQ(doc["D_uncorrected"]["parameters"]["D"].get<double>(), 0.0);
  EXPECT_FALSE(doc["warnings"].empty());
}

TEST(Decontaminate, CleanModelLeavesDUnchanged) {
  RunConfig rc;
  rc.model.separation = 15.0;
  rc.model.spectator_pairs = 2;
  rc.auto_flip = true;
  const Json doc = decontaminate_document(rc);
  const double unc = doc["D_uncorrected"]["parameters"]["D"].get<double>();
  const double tilde = doc["D_tilde"]["parameters"]["D"].get<double>();
  EXPECT_NEAR(tilde / unc, 1.0, 1e-9);
  EXPECT_EQ(doc["d_low"].size(), 2u);
}

TEST(Decontaminate, NeedsExactlyOneLowSource) {
  RunConfig rc;
  expect_error_kind([&] { decontaminate_document(rc); }, ErrorKind::Config);
  rc.auto_flip = true;
  rc.low_spin = {"x.json"};
  expect_error_kind([&] { decontaminate_document(rc); }, ErrorKind::Config);
}

TEST(Decontaminate, IngestedBrokenSymmetryStatesWithC3v) {
  TempDir dir;
  const OrbitalSet high = triangle_quartet(7.0);
  write_manifest(high, dir / "high.json");
  RunConfig rc;
  rc.manifest = dir / "high.json";
  for (std::size_t k = 0; k < 3; ++k) {
    const std::string name = "low" + std::to_string(k) + ".json";
    write_manifest(flip_occupation(high, k), dir / name);
    rc.low_spin.push_back(dir / name);
  }
  // a single broken-symmetry state breaks the threefold axis
  RunConfig one = rc;
  one.low_spin.resize(1);
  const Json lopsided = decontaminate_document(one);
  EXPECT_GT(lopsided["D_tilde"]["parameters"]["E"].get<double>(), 1.0);
  one.group = "C3v";
  const Json restored = decontaminate_document(one);
  EXPECT_LE(restored["D_tilde"]["parameters"]["E"].get<double>(), 1e-6);
  rc.group = "C3v";
  const Json all = decontaminate_document(rc);
  EXPECT_EQ(all["symmetry_group"]["order"], 6);
  EXPECT_LE(all["D_tilde"]["parameters"]["E"].get<double>(), 1e-6);
  EXPECT_NEAR(all["D_tilde"]["parameters"]["D"].get<double>() / all["D_uncorrected"]["parameters"]["D"].get<double>(),
              1.0, 1e-9);
  rc.low_spin = {dir / "high.json"};
  expect_error_kind([&] { decontaminate_document(rc); }, ErrorKind::Config);
}

TEST(Scan, ColumnsAndPlateau) {
  RunConfig rc;
  rc.model.spectator_pairs = 2;
  rc.model.contamination = 0.5;
  rc.scan = {10.0, 40.0, 4, {}};
  std::ostringstream out;
  write_scan(rc, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "separation,D_uncorrected,E_uncorrected,D_tilde,E_tilde,d_I_I_zz,d_I_II_zz,d_II_II_zz\r");
  std::vector<double> gap, r3;
  while (std::getline(in, line)) {
    std::vector<double> v;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) v.push_back(std::stod(cell));
    ASSERT_EQ(v.size(), 8u);
    gap.push_back(v[1] - v[3]);
    r3.push_back(v[3] * v[0] * v[0] * v[0]);
  }
  ASSERT_EQ(gap.size(), 4u);
  EXPECT_NEAR(gap.back() / gap.front(), 1.0, 1e-6);
  EXPECT_NEAR(r3.back() / -525566.0, 1.0, 1e-4);

  rc.scan.columns = {"separation", "bogus"};
  std::ostringstream sink;
  expect_error_kind([&] { write_scan(rc, sink); }, ErrorKind::Config);
}

TEST(Report, ReferenceRowsAndUnknownLabel) {
  EXPECT_EQ(reference_records().size(), 11u);
  const auto* nv = find_reference("diamond nv-");
  ASSERT_NE(nv, nullptr);
  EXPECT_EQ(nv->D_expt, 2867.0);
  ReportOptions opt;
  opt.references = {"VSi-/k"};
  opt.csv = true;
  std::ostringstream out;
  write_report(opt, out);
  EXPECT_NE(out.str().find("VSi-/k"), std::string::npos);
  EXPECT_NE(out.str().find("38.5"), std::string::npos);
  opt.references = {"no such defect"};
  expect_error_kind([&] { write_report(opt, out); }, ErrorKind::Config);
}

TEST(Report, ReadsResultFiles) {
  TempDir dir;
  RunConfig rc;
  rc.label = "model R=20";
  rc.auto_flip = true;
  rc.engine.unit = EnergyUnit::InvCm;
  std::ofstream(dir / "r.json") << decontaminate_document(rc).dump(2);
  ReportOptions opt;
  opt.results = {dir / "r.json"};
  std::ostringstream out;
  write_report(opt, out);
  EXPECT_NE(out.str().find("model R=20"), std::string::npos);
  EXPECT_NE(out.str().find("-65.7"), std::string::npos) << out.str();
}

TEST(Cli, ExitCodes) {
  TempDir dir;
  std::string text;
  EXPECT_EQ(run_cli({"report", "--ref", "NV-/hh"}, &text), kOk);
  EXPECT_NE(text.find("1331.0"), std::string::npos);
  EXPECT_EQ(run_cli({"report", "--ref", "nope"}), kConfig);
  EXPECT_EQ(run_cli({"compute", "--frobnicate"}), kConfig);
  std::ofstream(dir / "bad.json") << "{not json";
  const std::string bad = (dir / "bad.json").string();
  EXPECT_EQ(run_cli({"compute", "-m", bad.c_str()}), kParse);
  const std::string big = (dir / "big.json").string();
  std::vector<SpinOrbital> e;
  for (int k = 0; k < 7; ++k) {
    e.push_back(SpinOrbital{GaussianOrbital::s(Vector3(0, 0, 3.0 * k), 1.0), SpinChannel::Up, 1, Block::I, {}, ""});
  }
  write_manifest(OrbitalSet(std::move(e), SpinQuantum::from_twice(7), SpinQuantum::from_twice(7)), big);
  EXPECT_EQ(run_cli({"oracle", "brute", "-m", big.c_str()}), kResource);
  EXPECT_EQ(run_cli({"oracle", "point", "--r1", "0,0,0", "--r2", "0,0,10"}, &text), kOk);
  EXPECT_NE(text.find("-525.56"), std::string::npos) << text;
}

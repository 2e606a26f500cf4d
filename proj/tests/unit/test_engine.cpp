#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "test_support.hpp"
#include "zfskit/engine.hpp"
#include "zfskit/orbital_set.hpp"

using namespace zfs;

namespace {

SpinOrbital entry(const Orbital& o, SpinChannel s, Block b = Block::I, std::string label = "") {
  return SpinOrbital{o, s, 1, b, std::nullopt, std::move(label)};
}

OrbitalSet triplet(double R, double width = 1.0) {
  return OrbitalSet({entry(GaussianOrbital::s(Vector3::Zero(), width), SpinChannel::Up),
                     entry(GaussianOrbital::s(Vector3(0, 0, R), width), SpinChannel::Up)},
                    SpinQuantum::from_twice(2), SpinQuantum::from_twice(2));
}

// Classical dipolar D of two g = 2 electron spins a distance R apart along z,
// from SI constants: D = -(3/2) (mu0/4pi) (g muB)^2 / (h R^3).
double si_point_dipole_mhz(double R_bohr) {
  const double mu0_over_4pi = 1.00000000055e-7;  // CODATA 2018 mu0 / 4pi
  const double muB = 9.2740100783e-24;
  const double h = 6.62607015e-34;
  const double a0 = 5.29177210903e-11;
  const double R = R_bohr * a0;
  return -1.5 * mu0_over_4pi * 4.0 * muB * muB / (h * R * R * R) / 1e6;
}

GaussianOrbital p_mix(const Vector3& c) {
  return normalize(GaussianOrbital{{GaussianTerm{1.0, c, 0.9, Angular::Px}, GaussianTerm{0.4, c, 1.1, Angular::Pz},
                                    GaussianTerm{0.3, c + Vector3(0.2, 0, 0), 1.0, Angular::S}}});
}

}  // namespace

TEST(Engine, PointDipoleLimitMatchesSiFormula) {
  for (double R : {20.0, 40.0}) {
    const OrbitalSet set = triplet(R);
    const ZfsParameters p = extract_parameters(d_to_D(assemble_d(set).d_total, set.S()));
    EXPECT_NEAR(p.D / si_point_dipole_mhz(R), 1.0, 1e-6) << R;
    EXPECT_NEAR(p.E, 0.0, 1e-9 * std::abs(p.D));
    EXPECT_NEAR(std::abs(p.axes(2, 2)), 1.0, 1e-12);
  }
}

TEST(Engine, DiagonalPairCancels) {
  const OrbitalSet set = triplet(3.0);
  const PairContribution pc = pair_contribution(set, 1, 1);
  EXPECT_EQ(pc.total().max_abs(), 0.0);
}

TEST(Engine, ChiRuleAndPairSymmetry) {
  const OrbitalSet set({entry(p_mix(Vector3::Zero()), SpinChannel::Up),
                        entry(GaussianOrbital::s(Vector3(0, 1, 3), 1.0), SpinChannel::Up),
                        entry(GaussianOrbital::s(Vector3(1, 0, -3), 1.2), SpinChannel::Down)},
                       SpinQuantum::from_twice(1), SpinQuantum::from_twice(1));
  const CouplingResult r = assemble_d(set);
  ASSERT_EQ(r.pairs.size(), 6u);
  for (const auto& pc : r.pairs) {
    EXPECT_EQ(pc.chi, pc.spin_m == pc.spin_n ? 1 : -1);
    const PairContribution direct = pair_contribution(set, pc.m, pc.n);
    EXPECT_LT(max_abs_diff(direct.total().matrix(), pc.total().matrix()), 1e-12 * pc.total().max_abs());
    const PairContribution swapped = pair_contribution(set, pc.n, pc.m);
    EXPECT_LT(max_abs_diff(swapped.total().matrix(), pc.total().matrix()), 1e-12 * pc.total().max_abs());
  }
  // the opposite-spin pair flips sign relative to treating it as same-spin
  OrbitalSet same({set[0], set[1], entry(set[2].orbital, SpinChannel::Up)}, SpinQuantum::from_twice(3),
                  SpinQuantum::from_twice(3));
  const PairContribution a = pair_contribution(set, 0, 2);
  const PairContribution b = pair_contribution(same, 0, 2);
  EXPECT_LT(max_abs_diff(a.total().matrix(), -b.total().matrix()), 1e-12 * a.total().max_abs());
}

TEST(Engine, ClosedShellVanishes) {
  const auto s = GaussianOrbital::s(Vector3(0, 0, 1), 1.0);
  const auto p = p_mix(Vector3(0.5, 0, -1));
  const OrbitalSet closed({entry(s, SpinChannel::Up), entry(s, SpinChannel::Down), entry(p, SpinChannel::Up),
                           entry(p, SpinChannel::Down)},
                          SpinQuantum::from_twice(0), SpinQuantum::from_twice(0));
  const CouplingResult r = assemble_d(closed);
  EXPECT_LE(r.d_total.max_abs(), 1e-9);
}

TEST(Engine, IdenticalSpectatorPairsGiveNoCrossBlock) {
  BiradicalModel m;
  m.separation = 8.0;
  m.spectator_pairs = 3;
  const OrbitalSet set = build_biradical_model(m);
  const CouplingResult r = assemble_d(set);
  EXPECT_EQ(r.block(BlockPair::I_II).max_abs(), 0.0);
  EXPECT_EQ(r.block(BlockPair::II_II).max_abs(), 0.0);
  m.contamination = 0.5;
  const CouplingResult c = assemble_d(build_biradical_model(m));
  EXPECT_GT(c.block(BlockPair::I_II).max_abs(), 1.0);
}

TEST(Engine, BlocksSumToTotal) {
  BiradicalModel m;
  m.separation = 6.0;
  m.spectator_pairs = 2;
  m.contamination = 0.3;
  const CouplingResult r = assemble_d(build_biradical_model(m));
  const Matrix3 sum = r.block(BlockPair::I_I).matrix() + r.block(BlockPair::I_II).matrix() + r.block(BlockPair::II_II).matrix();
  EXPECT_LT(max_abs_diff(sum, r.d_total.matrix()), 1e-10 * r.d_total.max_abs());
}

TEST(Engine, RotationCovariance) {
  const OrbitalSet set({entry(p_mix(Vector3(0.3, 0, 0)), SpinChannel::Up),
                        entry(GaussianOrbital::s(Vector3(0, 2, 3), 1.0), SpinChannel::Up)},
                       SpinQuantum::from_twice(2), SpinQuantum::from_twice(2));
  const Matrix3 r = axis_angle(Vector3(1, -2, 0.5), 1.1);
  const SpinTensor d = assemble_d(set).d_total;
  const SpinTensor dr = assemble_d(rotate(set, r)).d_total;
  EXPECT_LT(max_abs_diff(dr.matrix(), rotate(d, r).matrix()), 1e-11 * d.max_abs());
}

TEST(Engine, UnitSelection) {
  const OrbitalSet set = triplet(10.0);
  EngineConfig cfg;
  cfg.unit = EnergyUnit::InvCm;
  const SpinTensor a = assemble_d(set).d_total;
  const SpinTensor b = assemble_d(set, cfg).d_total;
  EXPECT_EQ(b.unit(), EnergyUnit::InvCm);
  EXPECT_LT(max_abs_diff(b.in(EnergyUnit::MHz).matrix(), a.matrix()), 1e-12 * a.max_abs());
}

TEST(Engine, SameSpinOnlyDropsOppositeSpinExchange) {
  const auto s = GaussianOrbital::s(Vector3(0, 0, 0.5), 1.0);
  // a product of two s Gaussians is spherical and has no dipolar self-coupling
  const auto t = normalize(GaussianOrbital{{GaussianTerm{1.0, Vector3(0, 0, -0.5), 1.0, Angular::Pz}}});
  const OrbitalSet set({entry(s, SpinChannel::Up), entry(t, SpinChannel::Down)}, SpinQuantum::from_twice(0),
                       SpinQuantum::from_twice(0));
  EngineConfig cfg;
  cfg.exchange_scope = ExchangeScope::SameSpinOnly;
  const PairContribution pc = pair_contribution(set, 0, 1, cfg);
  EXPECT_EQ(pc.exchange_term.max_abs(), 0.0);
  EXPECT_GT(pair_contribution(set, 0, 1).exchange_term.max_abs(), 0.0);
}

TEST(Engine, DToDFactors) {
  Matrix3 m = Vector3(-1, -1, 2).asDiagonal();
  const SpinTensor d = traceless_project(m);
  EXPECT_EQ(d_to_D(d, SpinQuantum::from_twice(2)).matrix(), (2.0 * d).matrix());
  EXPECT_EQ(d_to_D(d, SpinQuantum::from_twice(3)).matrix(), ((2.0 * d) / 3.0).matrix());
  EXPECT_THROW(d_to_D(d, SpinQuantum::from_twice(1)), Error);
}

TEST(Engine, RejectsUnnormalizedOrbitals) {
  const GaussianOrbital raw{{GaussianTerm{2.0, Vector3::Zero(), 1.0, Angular::S}}};
  const OrbitalSet set({entry(raw, SpinChannel::Up), entry(GaussianOrbital::s(Vector3(0, 0, 4), 1.0), SpinChannel::Up)},
                       SpinQuantum::from_twice(2), SpinQuantum::from_twice(2));
  expect_error_kind([&] { assemble_d(set); }, ErrorKind::InvalidInput);
}

TEST(Engine, SpectralOnAnalyticSetIsRejected) {
  EngineConfig cfg;
  cfg.path = KernelPath::Spectral;
  expect_error_kind([&] { assemble_d(triplet(5.0), cfg); }, ErrorKind::UnsupportedRepresentation);
}

TEST(Engine, GridPathsApproachAnalytic) {
  const OrbitalSet set = triplet(5.0);
  GridGeometry g = cubic_cell(24.0, 48);
  g.origin = Vector3(-12, -12, -9.5);
  const OrbitalSet gs = to_grid(set, g);
  const double exact = assemble_d(set).d_total(2, 2);
  EngineConfig spectral;
  spectral.path = KernelPath::Spectral;
  EXPECT_NEAR(assemble_d(gs, spectral).d_total(2, 2) / exact, 1.0, 1e-2);
  EXPECT_NEAR(assemble_d(gs).d_total(2, 2) / exact, 1.0, 2e-2);
  EXPECT_TRUE(assemble_d(gs).warnings.empty());
}

TEST(Engine, SmallCellWarns) {
  GridGeometry g = cubic_cell(8.0, 16);
  g.origin = Vector3(-4, -4, -3);
  const OrbitalSet gs = to_grid(triplet(2.0), g);
  EXPECT_FALSE(assemble_d(gs).warnings.empty());
}

TEST(Engine, PairTableIsRfc4180) {
  std::ostringstream out;
  const CouplingResult r = assemble_d(triplet(6.0));
  write_pair_table(out, r);
  const std::string s = out.str();
  EXPECT_EQ(s.rfind("m,n,spin_m,spin_n,chi,block_pair,xx,yy,zz,xy,xz,yz,unit\r\n", 0), 0u);
  EXPECT_NE(s.find(",\"I,I\","), std::string::npos);
  std::size_t rows = 0;
  for (std::size_t p = s.find("\r\n"); p != std::string::npos; p = s.find("\r\n", p + 2)) ++rows;
  EXPECT_EQ(rows, 3u);
}

TEST(Engine, SpinThreeHalvesSet) {
  const OrbitalSet set({entry(GaussianOrbital::s(Vector3(3, 0, 0), 1.0), SpinChannel::Up),
                        entry(GaussianOrbital::s(Vector3(-1.5, 2.598076211353316, 0), 1.0), SpinChannel::Up),
                        entry(GaussianOrbital::s(Vector3(-1.5, -2.598076211353316, 0), 1.0), SpinChannel::Up)},
                       SpinQuantum::from_twice(3), SpinQuantum::from_twice(3));
  const ZfsParameters p = extract_parameters(d_to_D(assemble_d(set).d_total, set.S()));
  // three spins on a triangle: axial about the normal
  EXPECT_LE(p.E, 1e-9 * std::abs(p.D));
  EXPECT_NEAR(std::abs(p.axes(2, 2)), 1.0, 1e-9);
}

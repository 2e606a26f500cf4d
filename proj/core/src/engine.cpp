#include "zfskit/engine.hpp"

#include <cmath>
#include <exception>
#include <memory>
#include <optional>
#include <string>

#include "kernels_impl.hpp"
#include "parallel.hpp"
#include "zfskit/error.hpp"
#include "zfskit/format.hpp"
#include "zfskit/threads.hpp"

namespace zfs {

namespace {

constexpr double kAnalyticNormTol = 1e-10;
constexpr double kGridNormTol = 1e-8;

// alpha^2 / 8 expressed in the requested unit (kernel integrals are in Hartree a.u.)
double prefactor(EnergyUnit unit) {
  const double a = EngineConfig::fine_structure;
  return a * a / 8.0 * convert(1.0, EnergyUnit::Hartree, unit);
}

DensityField make_pair_density(const Orbital& a, const Orbital& b) {
  if (std::holds_alternative<GaussianOrbital>(a)) {
    return pair_density(std::get<GaussianOrbital>(a), std::get<GaussianOrbital>(b));
  }
  return pair_density(std::get<GridOrbital>(a), std::get<GridOrbital>(b));
}

void check_normalized(const OrbitalSet& set, const std::vector<std::size_t>& occ) {
  for (std::size_t m : occ) {
    const auto& orb = set[m].orbital;
    const bool analytic = std::holds_alternative<GaussianOrbital>(orb);
    const double n2 = analytic ? std::get<GaussianOrbital>(orb).norm_squared() : std::get<GridOrbital>(orb).norm_squared();
    const double tol = analytic ? kAnalyticNormTol : kGridNormTol;
    if (!(std::abs(n2 - 1.0) <= tol)) {
      fail(ErrorKind::InvalidInput, "orbital " + std::to_string(m) + " is not normalized (norm^2 = " + format_number(n2) + ")");
    }
  }
}

bool exchange_applies(const SpinOrbital& a, const SpinOrbital& b, ExchangeScope scope) {
  return scope == ExchangeScope::AllPairs || a.spin == b.spin;
}

// Evaluates raw kernel integrals for the selected path, reusing per-grid state.
class KernelEvaluator {
 public:
  KernelEvaluator(const OrbitalSet& set, const EngineConfig& cfg) : cfg_(cfg) {
    if (set.is_analytic()) {
      if (cfg.path == KernelPath::Spectral) {
        fail(ErrorKind::UnsupportedRepresentation,
             "spectral path needs periodic grid orbitals; analytic sets use the direct path");
      }
      return;
    }
    const GridGeometry& g = set.geometry();
    if (cfg.path == KernelPath::Direct) {
      direct_ = std::make_unique<detail::DirectGridKernel>(g, cfg);
    } else if (!g.periodic) {
      fail(ErrorKind::UnsupportedRepresentation, "spectral path needs a periodic grid");
    }
  }

  Matrix3 operator()(const DensityField& a, const DensityField& b) const {
    if (a.is_analytic()) return detail::analytic_kernel(a.analytic(), b.analytic());
    if (direct_) return direct_->apply(a.grid(), b.grid());
    return detail::spectral_kernel(detail::to_spectral(a.grid()), detail::to_spectral(b.grid()));
  }

  /// Spectral path only: kernel from cached transforms.
  Matrix3 operator()(const detail::SpectralDensity& a, const detail::SpectralDensity& b) const {
    return detail::spectral_kernel(a, b);
  }

  bool spectral_grid() const { return !direct_ && cfg_.path == KernelPath::Spectral; }
  std::optional<double> cutoff() const { return direct_ ? std::optional<double>(direct_->cutoff()) : std::nullopt; }

 private:
  const EngineConfig& cfg_;
  std::unique_ptr<detail::DirectGridKernel> direct_;
};

struct RawPair {
  Matrix3 hartree = Matrix3::Zero();
  Matrix3 exchange = Matrix3::Zero();
};

PairContribution make_contribution(const OrbitalSet& set, std::size_t m, std::size_t n, const RawPair& raw,
                                   const EngineConfig& cfg) {
  PairContribution pc;
  pc.m = m;
  pc.n = n;
  pc.spin_m = set[m].spin;
  pc.spin_n = set[n].spin;
  pc.chi = pc.spin_m == pc.spin_n ? 1 : -1;
  pc.block = block_pair(set[m].block, set[n].block);
  const double s = prefactor(cfg.unit) * pc.chi;
  pc.hartree_term = traceless_project(s * raw.hartree, cfg.unit);
  pc.exchange_term = traceless_project(-s * raw.exchange, cfg.unit);
  return pc;
}

// Rough orbital extent: twice the rms radius of |psi|^2 about its centroid.
double grid_extent(const GridOrbital& o) {
  const auto& g = o.geometry;
  double w = 0.0;
  Vector3 c = Vector3::Zero();
  std::size_t idx = 0;
  for (int i = 0; i < g.shape[0]; ++i)
    for (int j = 0; j < g.shape[1]; ++j)
      for (int k = 0; k < g.shape[2]; ++k, ++idx) {
        const double d = o.values[idx] * o.values[idx];
        w += d;
        c += d * g.position(i, j, k);
      }
  c /= w;
  double r2 = 0.0;
  idx = 0;
  for (int i = 0; i < g.shape[0]; ++i)
    for (int j = 0; j < g.shape[1]; ++j)
      for (int k = 0; k < g.shape[2]; ++k, ++idx) r2 += o.values[idx] * o.values[idx] * (g.position(i, j, k) - c).squaredNorm();
  return 2.0 * std::sqrt(r2 / w);
}

}  // namespace

std::string_view to_string(KernelPath p) { return p == KernelPath::Direct ? "direct" : "spectral"; }

std::string_view to_string(ExchangeScope s) { return s == ExchangeScope::AllPairs ? "all_pairs" : "same_spin_only"; }

KernelPath parse_kernel_path(std::string_view text) {
  if (text == "direct") return KernelPath::Direct;
  if (text == "spectral") return KernelPath::Spectral;
  fail(ErrorKind::Config, "unknown kernel path '" + std::string(text) + "' (expected direct or spectral)");
}

ExchangeScope parse_exchange_scope(std::string_view text) {
  if (text == "all_pairs") return ExchangeScope::AllPairs;
  if (text == "same_spin_only") return ExchangeScope::SameSpinOnly;
  fail(ErrorKind::Config, "unknown exchange scope '" + std::string(text) + "' (expected all_pairs or same_spin_only)");
}

std::string_view to_string(BlockPair b) {
  switch (b) {
    case BlockPair::I_I: return "I,I";
    case BlockPair::I_II: return "I,II";
    case BlockPair::II_II: return "II,II";
  }
  return "I,I";
}

BlockPair block_pair(Block a, Block b) {
  if (a == Block::I && b == Block::I) return BlockPair::I_I;
  if (a == Block::II && b == Block::II) return BlockPair::II_II;
  return BlockPair::I_II;
}

PairContribution pair_contribution(const OrbitalSet& set, std::size_t m, std::size_t n, const EngineConfig& cfg) {
  if (m >= set.size() || n >= set.size()) fail(ErrorKind::InvalidInput, "pair_contribution: index out of range");
  const KernelEvaluator kernel(set, cfg);
  const DensityField nmm = make_pair_density(set[m].orbital, set[m].orbital);
  const DensityField nnn = make_pair_density(set[n].orbital, set[n].orbital);
  RawPair raw;
  raw.hartree = kernel(nmm, nnn);
  if (exchange_applies(set[m], set[n], cfg.exchange_scope)) {
    const DensityField nmn = make_pair_density(set[m].orbital, set[n].orbital);
    raw.exchange = kernel(nmn, nmn);
  }
  return make_contribution(set, m, n, raw, cfg);
}

CouplingResult assemble_d(const OrbitalSet& set, const EngineConfig& cfg) {
  const std::vector<std::size_t> occ = set.occupied();
  if (occ.empty()) fail(ErrorKind::InvalidInput, "assemble_d: no occupied orbitals");
  check_normalized(set, occ);

  const KernelEvaluator kernel(set, cfg);
  CouplingResult result;
  result.method = cfg.path;
  result.exchange_scope = cfg.exchange_scope;
  result.cutoff = kernel.cutoff();

  if (!set.is_analytic()) {
    const GridGeometry& g = set.geometry();
    result.grid = g;
    if (g.periodic) {
      double extent = 0.0;
      for (std::size_t m : occ) extent = std::max(extent, grid_extent(std::get<GridOrbital>(set[m].orbital)));
      if (g.min_width() < 4.0 * extent) {
        result.warnings.push_back("cell width " + format_number(g.min_width()) + " Bohr is below 4x the orbital extent (" +
                                  format_number(extent) + " Bohr); periodic images may bias the result");
      }
    }
  }

  std::vector<DensityField> diag;
  diag.reserve(occ.size());
  for (std::size_t m : occ) diag.push_back(make_pair_density(set[m].orbital, set[m].orbital));
  std::vector<detail::SpectralDensity> diag_hat;
  if (kernel.spectral_grid()) {
    for (const auto& d : diag) diag_hat.push_back(detail::to_spectral(d.grid()));
  }

  // unordered pairs a < b over occupied positions; (m,n) and (n,m) share the integrals
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < occ.size(); ++a)
    for (std::size_t b = a + 1; b < occ.size(); ++b) pairs.emplace_back(a, b);
  std::vector<RawPair> raw(pairs.size());
  std::exception_ptr error;

#pragma omp parallel for schedule(dynamic, 1) num_threads(thread_count())
  for (std::ptrdiff_t p = 0; p < static_cast<std::ptrdiff_t>(pairs.size()); ++p) {
    try {
      const auto [a, b] = pairs[p];
      const SpinOrbital& ea = set[occ[a]];
      const SpinOrbital& eb = set[occ[b]];
      raw[p].hartree = diag_hat.empty() ? kernel(diag[a], diag[b]) : kernel(diag_hat[a], diag_hat[b]);
      if (exchange_applies(ea, eb, cfg.exchange_scope)) {
        const DensityField nmn = make_pair_density(ea.orbital, eb.orbital);
        raw[p].exchange = kernel(nmn, nmn);
      }
    } catch (...) {
#pragma omp critical
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);

  detail::CompensatedMatrix total;
  std::array<detail::CompensatedMatrix, 3> blocks;
  result.pairs.reserve(2 * pairs.size());
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const std::size_t m = occ[pairs[p].first];
    const std::size_t n = occ[pairs[p].second];
    for (const auto& [i, j] : {std::pair{m, n}, std::pair{n, m}}) {
      PairContribution pc = make_contribution(set, i, j, raw[p], cfg);
      const Matrix3 t = pc.total().matrix();
      total.add(t);
      blocks[static_cast<int>(pc.block)].add(t);
      result.pairs.push_back(std::move(pc));
    }
  }
  result.d_total = traceless_project(total.value(), cfg.unit);
  for (int b = 0; b < 3; ++b) result.blocks[b] = traceless_project(blocks[b].value(), cfg.unit);
  return result;
}

SpinTensor d_to_D(const SpinTensor& d, SpinQuantum S) {
  if (S.twice() < 2) {
    fail(ErrorKind::InvalidInput, "zero-field splitting needs S >= 1, got S = " + to_string(S));
  }
  // S (S - 1/2) with S = twice/2
  const double factor = S.twice() * (S.twice() - 1) / 4.0;
  return d / factor;
}

void write_pair_table(std::ostream& out, const CouplingResult& result) {
  out << "m,n,spin_m,spin_n,chi,block_pair,xx,yy,zz,xy,xz,yz,unit\r\n";
  for (const auto& pc : result.pairs) {
    const Matrix3 t = pc.total().matrix();
    out << pc.m << ',' << pc.n << ',' << to_string(pc.spin_m) << ',' << to_string(pc.spin_n) << ',' << pc.chi << ','
        << csv_field(to_string(pc.block)) << ',' << format_number(t(0, 0)) << ',' << format_number(t(1, 1)) << ','
        << format_number(t(2, 2)) << ',' << format_number(t(0, 1)) << ',' << format_number(t(0, 2)) << ','
        << format_number(t(1, 2)) << ',' << csv_field(to_string(pc.total().unit())) << "\r\n";
  }
}

}  // namespace zfs

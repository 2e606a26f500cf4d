#include "zfskit/oracle.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "parallel.hpp"
#include "zfskit/error.hpp"

namespace zfs {

namespace {

double pair_prefactor(EnergyUnit unit) {
  const double a = constants::fine_structure;
  return a * a / 8.0 * convert(1.0, EnergyUnit::Hartree, unit);
}

}  // namespace

SpinTensor point_dipole_d(const PointSpinPair& pair, EnergyUnit unit) {
  if (pair.relative_sign != 1 && pair.relative_sign != -1) {
    fail(ErrorKind::InvalidInput, "relative_sign must be +1 or -1");
  }
  const Vector3 u = pair.r1 - pair.r2;
  const double r2 = u.squaredNorm();
  if (!(r2 > 0.0)) fail(ErrorKind::InvalidInput, "point spins coincide");
  const double r = std::sqrt(r2);
  const double r5 = r2 * r2 * r;
  Matrix3 k = -3.0 * u * u.transpose();
  k.diagonal().array() += r2;
  k /= r5;
  // both orderings of the pair contribute
  return traceless_project(2.0 * pair_prefactor(unit) * pair.relative_sign * k, unit);
}

SpinTensor brute_force_d(const OrbitalSet& input, const BruteForceOptions& options) {
  const std::vector<std::size_t> occ = input.occupied();
  if (occ.size() > static_cast<std::size_t>(brute_force_max_orbitals)) {
    fail(ErrorKind::Resource, "brute force is limited to " + std::to_string(brute_force_max_orbitals) +
                                  " occupied orbitals, got " + std::to_string(occ.size()));
  }

  std::optional<OrbitalSet> sampled;
  if (input.is_analytic()) {
    if (options.points < 2) fail(ErrorKind::InvalidInput, "brute force needs at least 2 points per axis");
    const std::size_t pts = static_cast<std::size_t>(options.points);
    if (pts * pts * pts > brute_force_max_voxels) {
      fail(ErrorKind::Resource, "brute force grid " + std::to_string(pts) + "^3 exceeds 32^3 voxels");
    }
    std::vector<Vector3> centers;
    for (const auto& e : input.entries()) {
      for (const auto& t : std::get<GaussianOrbital>(e.orbital).terms) centers.push_back(t.center);
    }
    sampled.emplace(to_grid(input, bounding_box(centers, options.padding, options.points)));
  } else if (input.geometry().size() > brute_force_max_voxels) {
    fail(ErrorKind::Resource,
         "brute force grid has " + std::to_string(input.geometry().size()) + " voxels, limit is 32^3");
  }
  const OrbitalSet& set = sampled ? *sampled : input;
  const GridGeometry& g = set.geometry();
  const std::size_t nv = g.size();
  const std::size_t no = occ.size();

  std::vector<std::vector<double>> psi(no);
  std::vector<int> spin(no);
  for (std::size_t m = 0; m < no; ++m) {
    psi[m] = std::get<GridOrbital>(set[occ[m]].orbital).values;
    spin[m] = set[occ[m]].spin == SpinChannel::Up ? 1 : -1;
  }

  std::vector<Vector3> pos(nv);
  {
    std::size_t v = 0;
    for (int i = 0; i < g.shape[0]; ++i)
      for (int j = 0; j < g.shape[1]; ++j)
        for (int k = 0; k < g.shape[2]; ++k) pos[v++] = g.position(i, j, k);
  }
  const Matrix3 to_frac = g.cell.transpose().inverse();
  const double cutoff = g.periodic ? default_cutoff(g) : 0.0;

  // Integrand weight of one voxel pair, summed over every ordered orbital pair m != n.
  auto weight = [&](std::size_t a, std::size_t b) {
    double w = 0.0;
    for (std::size_t m = 0; m < no; ++m) {
      for (std::size_t n = 0; n < no; ++n) {
        if (m == n) continue;
        const int chi = spin[m] * spin[n];
        double bracket = psi[m][a] * psi[m][a] * psi[n][b] * psi[n][b];
        if (options.exchange_scope == ExchangeScope::AllPairs || chi == 1) {
          bracket -= psi[m][a] * psi[n][a] * psi[m][b] * psi[n][b];
        }
        w += chi * bracket;
      }
    }
    return w;
  };

  const Matrix3 sum = detail::chunked_reduce(nv, 16, [&](std::size_t begin, std::size_t end) {
    detail::CompensatedMatrix acc;
    for (std::size_t a = begin; a < end; ++a) {
      double xx = 0, yy = 0, zz = 0, xy = 0, xz = 0, yz = 0;
      for (std::size_t b = 0; b < nv; ++b) {
        if (a == b) continue;
        Vector3 u = pos[a] - pos[b];
        if (g.periodic) {
          Vector3 f = to_frac * u;
          for (int c = 0; c < 3; ++c) f[c] -= std::round(f[c]);
          u = g.cell.transpose() * f;
        }
        const double r2 = u.squaredNorm();
        if (g.periodic && !(std::sqrt(r2) < cutoff)) continue;
        const double w = weight(a, b);
        if (w == 0.0) continue;
        const double inv5 = 1.0 / (r2 * r2 * std::sqrt(r2));
        xx += w * (r2 - 3 * u.x() * u.x()) * inv5;
        yy += w * (r2 - 3 * u.y() * u.y()) * inv5;
        zz += w * (r2 - 3 * u.z() * u.z()) * inv5;
        xy += w * (-3 * u.x() * u.y()) * inv5;
        xz += w * (-3 * u.x() * u.z()) * inv5;
        yz += w * (-3 * u.y() * u.z()) * inv5;
      }
      Matrix3 m;
      m << xx, xy, xz, xy, yy, yz, xz, yz, zz;
      acc.add(m);
    }
    return acc.value();
  });

  const double dv = g.voxel_volume();
  return traceless_project(pair_prefactor(options.unit) * dv * dv * sum, options.unit);
}

}  // namespace zfs

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include <fftw3.h>

#include "hermite.hpp"
#include "kernels_impl.hpp"
#include "parallel.hpp"
#include "zfskit/error.hpp"

namespace zfs {

namespace detail {

namespace {

constexpr std::array<std::array<int, 2>, 6> kComponents = {{{0, 0}, {1, 1}, {2, 2}, {0, 1}, {0, 2}, {1, 2}}};

Matrix3 from_components(const std::array<double, 6>& c) {
  Matrix3 m;
  m << c[0], c[3], c[4], c[3], c[1], c[5], c[4], c[5], c[2];
  return m;
}

// The kernel is -(Hess I - tr(Hess I)/3), with I the Coulomb integral as a
// function of the displacement between the two densities. The traceless part
// of the Hessian is exactly the principal-value dipole kernel.
Matrix3 traceless_negative(const Matrix3& h) {
  Matrix3 t = -h;
  t.diagonal().array() += h.trace() / 3.0;
  return t;
}

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

Matrix3 analytic_kernel(const AnalyticDensity& a, const AnalyticDensity& b) {
  CompensatedMatrix hessian;
  const double two_pi_52 = 2.0 * std::pow(std::numbers::pi, 2.5);
  for (const HermitePrimitive& pa : a.primitives) {
    for (const HermitePrimitive& pb : b.primitives) {
      const double p = pa.exponent;
      const double q = pb.exponent;
      const double alpha = p * q / (p + q);
      const double pref = two_pi_52 / (p * q * std::sqrt(p + q)) * pa.weight * pb.weight;
      if (pref == 0.0) continue;
      const HermiteCoulomb R(alpha, pa.center - pb.center, pa.max_order() + pb.max_order() + 2);

      std::array<double, 6> h{};
      for (std::size_t t = 0; t < pa.e[0].size(); ++t)
        for (std::size_t u = 0; u < pa.e[1].size(); ++u)
          for (std::size_t v = 0; v < pa.e[2].size(); ++v) {
            const double ea = pa.e[0][t] * pa.e[1][u] * pa.e[2][v];
            if (ea == 0.0) continue;
            for (std::size_t tau = 0; tau < pb.e[0].size(); ++tau)
              for (std::size_t nu = 0; nu < pb.e[1].size(); ++nu)
                for (std::size_t phi = 0; phi < pb.e[2].size(); ++phi) {
                  const double eb = pb.e[0][tau] * pb.e[1][nu] * pb.e[2][phi];
                  if (eb == 0.0) continue;
                  const double sign = ((tau + nu + phi) % 2 == 0) ? 1.0 : -1.0;
                  const double w = ea * eb * sign;
                  const int T = static_cast<int>(t + tau);
                  const int U = static_cast<int>(u + nu);
                  const int V = static_cast<int>(v + phi);
                  h[0] += w * R(T + 2, U, V);
                  h[1] += w * R(T, U + 2, V);
                  h[2] += w * R(T, U, V + 2);
                  h[3] += w * R(T + 1, U + 1, V);
                  h[4] += w * R(T + 1, U, V + 1);
                  h[5] += w * R(T, U + 1, V + 1);
                }
          }
      for (double& x : h) x *= pref;
      hessian.add(from_components(h));
    }
  }
  return traceless_negative(hessian.value());
}

DirectGridKernel::DirectGridKernel(const GridGeometry& geometry, const EngineConfig& cfg)
    : geometry_(geometry), screening_(cfg.screening) {
  geometry_.validate();
  const auto& n = geometry_.shape;
  if (geometry_.periodic) {
    const double max_cutoff = default_cutoff(geometry_);
    cutoff_ = cfg.cutoff.value_or(max_cutoff);
    if (!(cutoff_ > 0.0)) fail(ErrorKind::Config, "direct kernel cutoff must be positive");
    if (cutoff_ > max_cutoff * (1.0 + 1e-12)) {
      fail(ErrorKind::PeriodicImage, "direct kernel cutoff " + std::to_string(cutoff_) +
                                         " Bohr exceeds half the cell width (" + std::to_string(max_cutoff) + " Bohr)");
    }
    span_ = n;
  } else {
    cutoff_ = INFINITY;
    span_ = {2 * n[0] - 1, 2 * n[1] - 1, 2 * n[2] - 1};
  }

  const Matrix3 steps = geometry_.steps();
  table_.assign(6 * static_cast<std::size_t>(span_[0]) * span_[1] * span_[2], 0.0);
  auto offset = [&](int idx, int d) {
    // table slot -> signed index offset
    if (geometry_.periodic) return idx < (n[d] + 1) / 2 ? idx : idx - n[d];
    return idx - (n[d] - 1);
  };
  for (int a = 0; a < span_[0]; ++a)
    for (int b = 0; b < span_[1]; ++b)
      for (int c = 0; c < span_[2]; ++c) {
        const int da = offset(a, 0), db = offset(b, 1), dc = offset(c, 2);
        if (da == 0 && db == 0 && dc == 0) continue;  // coincident voxel: spherical average is zero
        const Vector3 u = da * steps.row(0).transpose() + db * steps.row(1).transpose() + dc * steps.row(2).transpose();
        const double r2 = u.squaredNorm();
        const double r = std::sqrt(r2);
        if (geometry_.periodic && !(r < cutoff_)) continue;
        const double inv5 = 1.0 / (r2 * r2 * r);
        double* out = &table_[6 * ((static_cast<std::size_t>(a) * span_[1] + b) * span_[2] + c)];
        for (int s = 0; s < 6; ++s) {
          const auto [i, j] = kComponents[s];
          out[s] = ((i == j ? r2 : 0.0) - 3.0 * u[i] * u[j]) * inv5;
        }
      }
}

std::size_t DirectGridKernel::table_index(int di, int dj, int dk) const {
  const auto& n = geometry_.shape;
  auto slot = [&](int d, int axis) {
    if (geometry_.periodic) {
      d %= n[axis];
      if (d < 0) d += n[axis];
      return d;
    }
    return d + n[axis] - 1;
  };
  return 6 * ((static_cast<std::size_t>(slot(di, 0)) * span_[1] + slot(dj, 1)) * span_[2] + slot(dk, 2));
}

DirectGridKernel::Screened DirectGridKernel::screen(const GridDensity& d) const {
  double vmax = 0.0;
  for (double v : d.values) vmax = std::max(vmax, std::abs(v));
  const double threshold = screening_ * vmax;
  Screened s;
  const auto& n = geometry_.shape;
  std::size_t idx = 0;
  for (int i = 0; i < n[0]; ++i)
    for (int j = 0; j < n[1]; ++j)
      for (int k = 0; k < n[2]; ++k, ++idx) {
        const double v = d.values[idx];
        if (v == 0.0 || std::abs(v) < threshold) continue;
        s.i.push_back(i);
        s.j.push_back(j);
        s.k.push_back(k);
        s.v.push_back(v);
      }
  return s;
}

Matrix3 DirectGridKernel::apply(const GridDensity& a, const GridDensity& b) const {
  if (!(a.geometry == geometry_) || !(b.geometry == geometry_)) {
    fail(ErrorKind::InvalidInput, "kernel_direct: densities are not on the kernel's grid");
  }
  const Screened sa = screen(a);
  const Screened sb = screen(b);
  const double dv = geometry_.voxel_volume();

  // slot of every index difference d in (-n, n), per axis, prescaled to a flat table offset
  const auto& n = geometry_.shape;
  std::array<std::vector<std::size_t>, 3> slot;
  for (int axis = 0; axis < 3; ++axis) {
    slot[axis].resize(2 * static_cast<std::size_t>(n[axis]) - 1);
    for (int d = 1 - n[axis]; d < n[axis]; ++d) {
      const int di = axis == 0 ? d : 0, dj = axis == 1 ? d : 0, dk = axis == 2 ? d : 0;
      slot[axis][d + n[axis] - 1] = table_index(di, dj, dk) - table_index(0, 0, 0);
    }
  }
  const std::size_t base = table_index(0, 0, 0);

  const Matrix3 sum = chunked_reduce(sa.v.size(), 64, [&](std::size_t begin, std::size_t end) {
    std::array<double, 6> acc{};
    for (std::size_t x = begin; x < end; ++x) {
      std::array<double, 6> inner{};
      const std::size_t* si = &slot[0][sa.i[x] + n[0] - 1];
      const std::size_t* sj = &slot[1][sa.j[x] + n[1] - 1];
      const std::size_t* sk = &slot[2][sa.k[x] + n[2] - 1];
      for (std::size_t y = 0; y < sb.v.size(); ++y) {
        const double* k = &table_[base + *(si - sb.i[y]) + *(sj - sb.j[y]) + *(sk - sb.k[y])];
        const double w = sb.v[y];
        for (int s = 0; s < 6; ++s) inner[s] += w * k[s];
      }
      for (int s = 0; s < 6; ++s) acc[s] += sa.v[x] * inner[s];
    }
    return from_components(acc);
  });
  return sum * (dv * dv);
}

SpectralDensity to_spectral(const GridDensity& d) {
  if (!d.geometry.periodic) {
    fail(ErrorKind::UnsupportedRepresentation, "spectral kernel needs a periodic grid");
  }
  const auto& n = d.geometry.shape;
  const std::size_t nc = static_cast<std::size_t>(n[0]) * n[1] * (n[2] / 2 + 1);
  SpectralDensity out;
  out.geometry = d.geometry;
  out.coeffs.resize(nc);

  std::vector<double> in(d.values);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    plan = fftw_plan_dft_r2c_3d(n[0], n[1], n[2], in.data(), reinterpret_cast<fftw_complex*>(out.coeffs.data()),
                                FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  const double dv = d.geometry.voxel_volume();
  for (auto& c : out.coeffs) c *= dv;
  return out;
}

namespace {
bool nyquist(int m, int n) { return n % 2 == 0 && m != 0 && std::abs(m) == n / 2; }
}  // namespace

Matrix3 spectral_kernel(const SpectralDensity& a, const SpectralDensity& b) {
  if (!(a.geometry == b.geometry)) fail(ErrorKind::InvalidInput, "kernel_spectral: densities on different grids");
  const GridGeometry& g = a.geometry;
  const auto& n = g.shape;
  const int nh = n[2] / 2 + 1;
  const Matrix3 recip = 2.0 * std::numbers::pi * g.cell.inverse().transpose();  // rows b_j
  const double four_pi = 4.0 * std::numbers::pi;

  const Matrix3 sum = chunked_reduce(static_cast<std::size_t>(n[0]), 1, [&](std::size_t begin, std::size_t end) {
    std::array<double, 6> acc{};
    for (std::size_t i = begin; i < end; ++i) {
      const int mi = static_cast<int>(i) <= n[0] / 2 ? static_cast<int>(i) : static_cast<int>(i) - n[0];
      for (int j = 0; j < n[1]; ++j) {
        const int mj = j <= n[1] / 2 ? j : j - n[1];
        for (int k = 0; k < nh; ++k) {
          if (mi == 0 && mj == 0 && k == 0) continue;  // G = 0 carries no traceless contribution
          const std::size_t idx = (i * n[1] + j) * nh + k;
          const bool self_conjugate = (k == 0) || (n[2] % 2 == 0 && k == n[2] / 2);
          const double w = (self_conjugate ? 1.0 : 2.0) * std::real(a.coeffs[idx] * std::conj(b.coeffs[idx]));
          if (w == 0.0) continue;
          // A Nyquist index stands for +m and -m alike; average the kernel over both.
          const int ni = nyquist(mi, n[0]) ? 2 : 1;
          const int nj = nyquist(mj, n[1]) ? 2 : 1;
          const int nk = nyquist(k, n[2]) ? 2 : 1;
          const double share = w * four_pi / (ni * nj * nk);
          for (int si = 0; si < ni; ++si) {
            for (int sj = 0; sj < nj; ++sj) {
              for (int sk = 0; sk < nk; ++sk) {
                const Vector3 G = (si ? -mi : mi) * recip.row(0).transpose() +
                                  (sj ? -mj : mj) * recip.row(1).transpose() + (sk ? -k : k) * recip.row(2).transpose();
                const double g2 = G.squaredNorm();
                for (int s = 0; s < 6; ++s) {
                  const auto [p, q] = kComponents[s];
                  acc[s] += share * (G[p] * G[q] / g2 - (p == q ? 1.0 / 3.0 : 0.0));
                }
              }
            }
          }
        }
      }
    }
    return from_components(acc);
  });
  return sum / g.cell_volume();
}

}  // namespace detail

double default_cutoff(const GridGeometry& g) { return 0.5 * g.min_width(); }

Matrix3 kernel_direct(const DensityField& na, const DensityField& nb, const EngineConfig& cfg) {
  if (na.is_analytic() != nb.is_analytic()) {
    fail(ErrorKind::InvalidInput, "kernel_direct: cannot mix analytic and grid densities");
  }
  if (na.is_analytic()) return detail::analytic_kernel(na.analytic(), nb.analytic());
  if (!(na.grid().geometry == nb.grid().geometry)) fail(ErrorKind::InvalidInput, "kernel_direct: mismatched grids");
  const detail::DirectGridKernel kernel(na.grid().geometry, cfg);
  return kernel.apply(na.grid(), nb.grid());
}

Matrix3 kernel_spectral(const DensityField& na, const DensityField& nb) {
  if (na.is_analytic() || nb.is_analytic()) {
    fail(ErrorKind::UnsupportedRepresentation, "kernel_spectral needs periodic grid densities, got analytic input");
  }
  if (!(na.grid().geometry == nb.grid().geometry)) fail(ErrorKind::InvalidInput, "kernel_spectral: mismatched grids");
  return detail::spectral_kernel(detail::to_spectral(na.grid()), detail::to_spectral(nb.grid()));
}

}  // namespace zfs

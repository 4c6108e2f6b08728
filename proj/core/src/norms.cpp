#include "ninls/norms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fft.hpp"
#include "ninls/error.hpp"

namespace ninls {

SobolevIndex SobolevIndex::bracket_sum(double s) {
  SobolevIndex i;
  i.kind = SobolevKind::isotropic_bracket_sum;
  i.s = s;
  return i;
}

SobolevIndex SobolevIndex::anisotropic(double s1, double s2) {
  SobolevIndex i;
  i.kind = SobolevKind::anisotropic;
  i.s1 = s1;
  i.s2 = s2;
  return i;
}

SobolevIndex SobolevIndex::homogeneous(double s, ZeroModeRule rule) {
  SobolevIndex i;
  i.kind = SobolevKind::homogeneous;
  i.s = s;
  i.zero_mode = rule;
  return i;
}

void SobolevIndex::validate() const {
  switch (kind) {
    case SobolevKind::isotropic_bracket_sum:
      if (!std::isfinite(s)) throw ConfigError("Sobolev index s must be finite");
      break;
    case SobolevKind::anisotropic:
      if (!std::isfinite(s1) || !std::isfinite(s2))
        throw ConfigError("anisotropic Sobolev indices must be finite");
      break;
    case SobolevKind::homogeneous:
      if (!std::isfinite(s)) throw ConfigError("Sobolev index s must be finite");
      if (s < 0 && zero_mode == ZeroModeRule::unspecified)
        throw ConfigError("homogeneous Sobolev norm with s < 0 needs a zero-mode rule");
      break;
  }
}

double SobolevIndex::weight(double k1, double k2) const {
  switch (kind) {
    case SobolevKind::isotropic_bracket_sum:
      return std::pow(1.0 + std::abs(k1) + std::abs(k2), 2.0 * s);
    case SobolevKind::anisotropic:
      return std::pow(1.0 + k1 * k1, s1) * std::pow(1.0 + k2 * k2, s2);
    case SobolevKind::homogeneous: {
      const double r2 = k1 * k1 + k2 * k2;
      if (r2 == 0.0) {
        if (s == 0.0) return 1.0;
        if (s > 0.0) return 0.0;
        return zero_mode == ZeroModeRule::keep ? 1.0 : 0.0;
      }
      return std::pow(r2, s);
    }
  }
  return 1.0;
}

bool is_admissible(double q, double p) {
  auto inv = [](double x) { return std::isinf(x) ? 0.0 : 1.0 / x; };
  if (!(q >= 1.0) || !(p >= 1.0)) return false;
  return std::abs(inv(p) + 4.0 * inv(q) - 0.5) <= 1e-12;
}

double lp_norm(const Field& f, double p) {
  if (!(p >= 1.0)) {
    std::ostringstream os;
    os << "lp_norm needs p >= 1 (got " << p << ")";
    throw ConfigError(os.str());
  }
  const Field u = f.to_physical();
  const auto& d = u.data();
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& z : d) m = std::max(m, std::abs(z));
    return m;
  }
  double acc = 0.0;
  if (p == 2.0) {
    for (const auto& z : d) acc += std::norm(z);
  } else {
    for (const auto& z : d) acc += std::pow(std::abs(z), p);
  }
  return std::pow(acc * u.grid().cell(), 1.0 / p);
}

cplx sobolev_inner(const Field& f, const Field& g, const SobolevIndex& idx) {
  idx.validate();
  const Field a = f.to_spectral();
  const Field b = g.to_spectral();
  if (!(a.grid().spec() == b.grid().spec())) throw ConfigError("fields live on different grids");
  const auto& gr = a.grid();
  const auto& fx = gr.freqs_x();
  const auto& fy = gr.freqs_y();
  cplx acc = 0.0;
  for (int i = 0; i < gr.nx(); ++i) {
    for (int j = 0; j < gr.ny(); ++j) {
      const auto k = gr.index(i, j);
      acc += idx.weight(fx[i], fy[j]) * std::conj(a.data()[k]) * b.data()[k];
    }
  }
  return acc * gr.area();
}

double sobolev_norm(const Field& f, const SobolevIndex& idx) {
  idx.validate();
  const Field a = f.to_spectral();
  const auto& gr = a.grid();
  const auto& fx = gr.freqs_x();
  const auto& fy = gr.freqs_y();
  double acc = 0.0;
  for (int i = 0; i < gr.nx(); ++i)
    for (int j = 0; j < gr.ny(); ++j)
      acc += idx.weight(fx[i], fy[j]) * std::norm(a.data()[gr.index(i, j)]);
  return std::sqrt(acc * gr.area());
}

Field fractional_derivative(const Field& f, double s) {
  if (s == 0.0) return f;
  return apply_multiplier(f, [s](double k1, double k2) -> cplx {
    const double r2 = k1 * k1 + k2 * k2;
    return r2 == 0.0 ? 0.0 : std::pow(r2, 0.5 * s);
  });
}

double lp_x_hs_y(const Field& f, double p, double ell) {
  if (!(p >= 1.0)) throw ConfigError("lp_x_hs_y needs p >= 1");
  const Field a = f.to_spectral();
  const auto& g = a.grid();
  const int nx = g.nx(), ny = g.ny();
  auto d = a.data();
  // Back to point values in x only: row i then holds the y-coefficients at x_i.
  const auto& sx = g.parity_x();
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) d[g.index(i, j)] *= sx[i];
  detail::fft_x(d.data(), nx, ny, +1);

  std::vector<double> wy(ny);
  for (int j = 0; j < ny; ++j) {
    const double k = g.freqs_y()[j];
    wy[j] = std::pow(1.0 + k * k, ell);
  }
  const double py = g.spec().period_y;
  double acc = 0.0;
  for (int i = 0; i < nx; ++i) {
    double r = 0.0;
    const cplx* row = d.data() + g.index(i, 0);
    for (int j = 0; j < ny; ++j) r += wy[j] * std::norm(row[j]);
    const double h = std::sqrt(py * r);
    if (std::isinf(p)) {
      acc = std::max(acc, h);
    } else {
      acc += std::pow(h, p);
    }
  }
  return std::isinf(p) ? acc : std::pow(acc * g.dx(), 1.0 / p);
}

double mixed_norm(const Trajectory& traj, double q, double p, double ell) {
  if (traj.empty()) throw ConfigError("mixed_norm needs a nonempty trajectory");
  if (!(q >= 1.0)) throw ConfigError("mixed_norm needs q >= 1");
  const std::size_t n = traj.size();
  if (n > 2) {
    const double h = traj.times[1] - traj.times[0];
    for (std::size_t k = 1; k < n; ++k) {
      const double hk = traj.times[k] - traj.times[k - 1];
      if (std::abs(hk - h) > 1e-9 * std::max(1.0, std::abs(h)))
        throw ConfigError("mixed_norm needs uniformly spaced snapshots");
    }
  }
  std::vector<double> inner(n);
  for (std::size_t k = 0; k < n; ++k) inner[k] = lp_x_hs_y(traj.states[k], p, ell);
  if (std::isinf(q)) return *std::max_element(inner.begin(), inner.end());
  double acc = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    const double h = traj.times[k] - traj.times[k - 1];
    acc += 0.5 * h * (std::pow(inner[k - 1], q) + std::pow(inner[k], q));
  }
  return std::pow(acc, 1.0 / q);
}

}  // namespace ninls

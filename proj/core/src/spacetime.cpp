#include <cmath>

#include "fft.hpp"
#include "ninls/error.hpp"
#include "ninls/probes.hpp"

namespace ninls {

TimeIntegral adaptive_time_norm(const std::function<double(double)>& F, double T, double p,
                                const TimeQuadrature& quad) {
  if (!(T > 0.0)) throw ConfigError("time interval must have positive length");
  if (!(p > 0.0)) throw ConfigError("time norm exponent must be positive");
  if (quad.samples_per_unit < 1 || !(quad.rel_tol > 0.0))
    throw ConfigError("time quadrature needs samples_per_unit >= 1 and rel_tol > 0");
  long n = std::max<long>(1, static_cast<long>(std::ceil(quad.samples_per_unit * T)));
  double h = T / n;
  const double ends = 0.5 * (F(0.0) + F(T));
  double interior = 0.0;
  for (long k = 1; k < n; ++k) interior += F(k * h);
  double value = std::pow(h * (ends + interior), 1.0 / p);
  TimeIntegral out;
  for (;;) {
    if (2 * n > quad.max_samples) {
      out.value = value;
      out.samples = static_cast<int>(n + 1);
      out.converged = false;
      return out;
    }
    double added = 0.0;
    for (long k = 0; k < n; ++k) added += F((k + 0.5) * h);
    interior += added;
    n *= 2;
    h *= 0.5;
    const double next = std::pow(h * (ends + interior), 1.0 / p);
    const bool done = std::abs(next - value) <= quad.rel_tol * std::abs(next);
    value = next;
    if (done) {
      out.value = value;
      out.samples = static_cast<int>(n + 1);
      out.converged = true;
      return out;
    }
  }
}

FlowSampler::FlowSampler(const Field& f, const ModelParams& params)
    : FlowSampler(f, params, [](double, double) { return 1.0; }) {}

FlowSampler::FlowSampler(const Field& f, const ModelParams& params,
                         const std::function<double(double, double)>& weight)
    : grid_(f.grid_ptr()) {
  const Field s = f.to_spectral();
  const auto& g = *grid_;
  for (int i = 0; i < g.nx(); ++i) {
    for (int j = 0; j < g.ny(); ++j) {
      const auto k = g.index(i, j);
      const cplx c = s.data()[k];
      if (c == cplx(0.0)) continue;
      const double kx = g.freqs_x()[i], ky = g.freqs_y()[j];
      const double w = weight(kx, ky);
      if (w == 0.0) continue;
      idx_.push_back(k);
      sigma_.push_back(full_symbol(params, kx, ky));
      coef_.push_back(c * w * g.parity_x()[i] * g.parity_y()[j]);
    }
  }
}

void FlowSampler::values(double t, std::vector<cplx>& out) const {
  out.assign(grid_->size(), cplx(0.0));
  for (std::size_t r = 0; r < idx_.size(); ++r) {
    const double ph = -t * sigma_[r];
    out[idx_[r]] = coef_[r] * cplx(std::cos(ph), std::sin(ph));
  }
  detail::fft2d(out.data(), grid_->nx(), grid_->ny(), +1);
}

TimeIntegral spacetime_lp_linear(const Field& phi, const ModelParams& params, double T, double p,
                                 const TimeQuadrature& quad) {
  FlowSampler sampler(phi, params);
  const double cell = phi.grid().cell();
  std::vector<cplx> u;
  auto F = [&](double t) {
    sampler.values(t, u);
    double acc = 0.0;
    if (p == 4.0) {
      for (const auto& z : u) {
        const double m = std::norm(z);
        acc += m * m;
      }
    } else {
      for (const auto& z : u) acc += std::pow(std::abs(z), p);
    }
    return acc * cell;
  };
  return adaptive_time_norm(F, T, p, quad);
}

}  // namespace ninls

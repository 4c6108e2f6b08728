#include "ninls/propagator.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "ninls/error.hpp"

namespace ninls {

FrequencyBox FrequencyBox::decoupling(int N) {
  if (N < 1) throw ConfigError("decoupling box needs N >= 1");
  return {std::sqrt(0.5 * N), static_cast<double>(N)};
}

void FrequencyBox::validate() const {
  if (!(x_halfwidth > 0.0) || !(y_halfwidth > 0.0) || !std::isfinite(x_halfwidth) ||
      !std::isfinite(y_halfwidth))
    throw ConfigError("frequency box half-widths must be positive and finite");
}

bool FrequencyBox::contains(double k1, double k2) const {
  const double tol = 1e-12;
  return std::abs(k1) <= x_halfwidth * (1 + tol) && std::abs(k2) <= y_halfwidth * (1 + tol);
}

void FrequencyBox::require_fits(const FourierGrid& g) const {
  validate();
  // The most negative (Nyquist) mode has no positive partner, so it is excluded.
  const double kx = std::abs(g.freqs_x()[g.nx() / 2]);
  const double ky = std::abs(g.freqs_y()[g.ny() / 2]);
  if (x_halfwidth >= kx * (1 - 1e-12) || y_halfwidth >= ky * (1 - 1e-12)) {
    std::ostringstream os;
    os << "frequency box (" << x_halfwidth << ", " << y_halfwidth
       << ") exceeds the grid Nyquist range (" << kx << ", " << ky << ")";
    throw ConfigError(os.str());
  }
}

LinearGroup::LinearGroup(GridPtr grid, const ModelParams& params) : grid_(std::move(grid)) {
  const auto& g = *grid_;
  sigma_.resize(g.size());
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j)
      sigma_[g.index(i, j)] = full_symbol(params, g.freqs_x()[i], g.freqs_y()[j]);
}

void LinearGroup::apply_coefficients(std::vector<cplx>& c, double t) const {
  if (t == 0.0) return;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double ph = -t * sigma_[k];
    c[k] *= cplx(std::cos(ph), std::sin(ph));
  }
}

Field LinearGroup::apply(const Field& f, double t) const {
  if (!std::isfinite(t)) throw ConfigError("propagation time must be finite");
  if (!(f.grid().spec() == grid_->spec())) throw ConfigError("field grid does not match group grid");
  const bool was_physical = f.is_physical();
  auto c = f.to_spectral().data();
  apply_coefficients(c, t);
  Field out(f.grid_ptr(), std::move(c), Representation::spectral);
  return was_physical ? out.to_physical() : out;
}

Field propagate_linear(const Field& f, const ModelParams& params, double t) {
  if (!std::isfinite(t)) throw ConfigError("propagation time must be finite");
  return LinearGroup(f.grid_ptr(), params).apply(f, t);
}

Field duhamel_integral(const Forcing& forcing, const ModelParams& params, double t, int steps) {
  if (steps < 2) throw ConfigError("duhamel_integral needs steps >= 2");
  if (!std::isfinite(t)) throw ConfigError("duhamel_integral needs a finite time");
  const double h = t / steps;
  Field f0 = forcing(0.0).to_spectral();
  LinearGroup group(f0.grid_ptr(), params);
  std::vector<cplx> acc(f0.grid().size());
  for (int j = 0; j <= steps; ++j) {
    const double tj = j * h;
    auto c = (j == 0 ? f0 : forcing(tj).to_spectral()).data();
    group.apply_coefficients(c, t - tj);
    const double w = (j == 0 || j == steps) ? 0.5 * h : h;
    for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += w * c[k];
  }
  return Field(f0.grid_ptr(), std::move(acc), Representation::spectral);
}

Field random_band_limited(GridPtr grid, const FrequencyBox& box, std::uint64_t seed) {
  box.require_fits(*grid);
  const auto& g = *grid;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  std::vector<cplx> c(g.size());
  const int hx = g.nx() / 2, hy = g.ny() / 2;
  double norm2 = 0.0;
  for (int mx = -hx + 1; mx < hx; ++mx) {
    const int i = g.mode_index_x(mx);
    for (int my = -hy + 1; my < hy; ++my) {
      const int j = g.mode_index_y(my);
      if (!box.contains(g.freqs_x()[i], g.freqs_y()[j])) continue;
      const double re = normal(rng);
      const double im = normal(rng);
      c[g.index(i, j)] = cplx(re, im);
      norm2 += re * re + im * im;
    }
  }
  if (norm2 == 0.0) throw ConfigError("frequency box contains no grid mode");
  const double scale = 1.0 / std::sqrt(norm2 * g.area());
  for (auto& z : c) z *= scale;
  return Field(std::move(grid), std::move(c), Representation::spectral);
}

}  // namespace ninls

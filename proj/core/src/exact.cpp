#include "ninls/exact.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fft.hpp"
#include "ninls/error.hpp"
#include "quadrature.hpp"

namespace ninls {
namespace {

void require_txr(const FourierGrid& g) {
  if (g.spec().geometry != Geometry::TxR)
    throw ConfigError("standing waves are sampled on TxR grids");
}

// sqrt(2) pi sech(pi xi / (2a)): Fourier transform of sqrt(2) a sech(a y).
double profile_hat(double xi, double a) { return std::sqrt(2.0) * kPi / std::cosh(kPi * xi / (2.0 * a)); }

template <class F>
double half_line_integral(const F& f, double upper) {
  // A fixed composite Simpson pass sets the scale of the adaptive tolerance.
  const int m = 2000;
  const double h = upper / m;
  double crude = f(0.0) + f(upper);
  for (int k = 1; k < m; ++k) crude += (k % 2 ? 4.0 : 2.0) * f(k * h);
  crude *= h / 3.0;
  detail::AdaptiveSimpson simpson;
  const double tol = std::max(1e-13 * std::abs(crude), 1e-300);
  const double v = simpson.run(f, 0.0, upper, tol);
  if (!simpson.converged) {
    std::ostringstream os;
    os << "H^s quadrature did not converge, error estimate " << simpson.error;
    throw NumericalError(NumericalFailure::quadrature_not_converged, os.str());
  }
  return v;
}

}  // namespace

double StandingWaveParams::sigma() const {
  const double nn = static_cast<double>(n);
  return epsilon * nn * nn - alpha * nn * nn * nn * nn + theta;
}

void StandingWaveParams::validate() const {
  if (epsilon != 0 && epsilon != 1) throw ConfigError("epsilon must be 0 or 1");
  if (!(alpha < 0.0)) throw ConfigError("standing waves require alpha < 0");
  if (!(sigma() > 0.0)) {
    std::ostringstream os;
    os << "standing wave needs sigma = eps n^2 - alpha n^4 + theta > 0 (got " << sigma() << ")";
    throw ConfigError(os.str());
  }
}

ModelParams StandingWaveParams::model() const {
  return ModelParams{epsilon, alpha, Nonlinearity::focusing};
}

Field standing_wave(const StandingWaveParams& p, double t, GridPtr grid) {
  p.validate();
  require_txr(*grid);
  if (grid->mode_index_x(static_cast<int>(p.n)) < 0 || std::labs(p.n) >= grid->nx() / 2)
    throw ConfigError("standing wave x-mode does not fit the grid");
  const double sig = p.sigma();
  const double amp = std::sqrt(2.0 * sig);
  const double r = std::sqrt(sig);
  const double nn = static_cast<double>(p.n);
  const cplx time_phase = std::polar(1.0, p.theta * t);
  return Field::sample(grid, [&](double x, double y) {
    return amp * time_phase * std::polar(1.0, nn * x) / std::cosh(r * y);
  });
}

double profile_ode_residual(const StandingWaveParams& p, GridPtr grid, double amplitude_factor) {
  p.validate();
  require_txr(*grid);
  const auto& g = *grid;
  const int ny = g.ny();
  const double sig = p.sigma();
  const double amp = amplitude_factor * std::sqrt(2.0 * sig);
  const double r = std::sqrt(sig);
  std::vector<cplx> phi(ny), d2(ny);
  for (int j = 0; j < ny; ++j) phi[j] = amp / std::cosh(r * g.points_y()[j]);
  d2 = phi;
  // Derivative multipliers commute with the (-1)^m parity factors.
  detail::fft1d(d2.data(), ny, -1);
  for (int j = 0; j < ny; ++j) {
    const double k = g.freqs_y()[j];
    d2[j] *= -k * k / ny;
  }
  detail::fft1d(d2.data(), ny, +1);
  double worst = 0.0;
  for (int j = 0; j < ny; ++j) {
    const double f = phi[j].real();
    worst = std::max(worst, std::abs(-d2[j].real() + sig * f - f * f * f));
  }
  return worst;
}

double pde_residual_standing_wave(const StandingWaveParams& p, double t, GridPtr grid,
                                  double amplitude_factor) {
  const Field u = standing_wave(p, t, grid) * amplitude_factor;
  const ModelParams m = p.model();
  const Field lin = apply_multiplier(u, [&](double k1, double k2) -> cplx {
    return -m.epsilon * k1 * k1 - k2 * k2 + m.alpha * k1 * k1 * k1 * k1;
  });
  double worst = 0.0;
  const auto& du = u.data();
  const auto& dl = lin.data();
  for (std::size_t k = 0; k < du.size(); ++k) {
    // i u_t = -theta u for the exact phase e^{i theta t}.
    const cplx res = -p.theta * du[k] + dl[k] + std::norm(du[k]) * du[k];
    worst = std::max(worst, std::abs(res));
  }
  return worst;
}

void IllposedFamilyParams::validate() const {
  if (!(s >= -0.5 && s < 0.0)) throw ConfigError("ill-posedness family needs s in [-1/2, 0)");
  if (!(gamma > 0.0)) throw ConfigError("ill-posedness family needs gamma > 0");
  if (!(tau > 0.0)) throw ConfigError("ill-posedness family needs tau > 0");
  if (!(delta > 0.0)) throw ConfigError("ill-posedness family needs delta > 0");
  if (!(4.0 * s + delta < 0.0)) throw ConfigError("ill-posedness family needs 4s + delta < 0");
  if (n < 1) throw ConfigError("ill-posedness family needs n >= 1");
  if (!(alpha < 0.0)) throw ConfigError("ill-posedness family needs alpha < 0");
  if (epsilon != 0 && epsilon != 1) throw ConfigError("epsilon must be 0 or 1");
  const double g2 = gamma * gamma - tau * std::pow(static_cast<double>(n), delta + 4.0 * s);
  if (!(g2 > 0.0)) {
    std::ostringstream os;
    os << "gamma_n is not real and positive at n = " << n << " (gamma_n^2 = " << g2 << ")";
    throw ConfigError(os.str());
  }
}

double IllposedFamilyParams::gamma_n() const {
  return std::sqrt(gamma * gamma - tau * std::pow(static_cast<double>(n), delta + 4.0 * s));
}

double IllposedFamilyParams::theta(double g) const {
  const double nn = static_cast<double>(n);
  return g * g * std::pow(nn, -4.0 * s) - epsilon * nn * nn + alpha * nn * nn * nn * nn;
}

StandingWaveParams IllposedFamilyParams::perturbed() const {
  validate();
  return {n, theta(gamma_n()), alpha, epsilon};
}

StandingWaveParams IllposedFamilyParams::reference() const {
  validate();
  return {n, theta(gamma), alpha, epsilon};
}

std::pair<Field, Field> illposed_pair(const IllposedFamilyParams& p, double t, GridPtr grid) {
  p.validate();
  // The widest profile is sech(a y) with the smaller a = gamma_n n^{-2s}.
  const double a_min = p.gamma_n() * std::pow(static_cast<double>(p.n), -2.0 * p.s);
  if (grid->spec().period_y < 20.0 / a_min) {
    std::ostringstream os;
    os << "box length " << grid->spec().period_y << " is below 20 / a = " << 20.0 / a_min
       << " for the widest profile of the family";
    throw ConfigError(os.str());
  }
  return {standing_wave(p.perturbed(), t, grid), standing_wave(p.reference(), t, grid)};
}

double PairNorms::distance(double t) const {
  const double c = std::cos(delta_theta * t);
  return std::sqrt(d0 * d0 + 2.0 * (1.0 - c) * inner);
}

PairNorms illposed_pair_norms(const IllposedFamilyParams& p) {
  p.validate();
  const double scale = std::pow(static_cast<double>(p.n), -2.0 * p.s);
  const double aA = p.gamma_n() * scale;
  const double aB = p.gamma * scale;
  const double nn = std::abs(static_cast<double>(p.n));
  auto w = [&](double xi) { return std::pow(1.0 + nn + xi, 2.0 * p.s); };
  // sech(pi xi / (2a)) < 1e-19 beyond this point.
  const double upper = 2.0 * std::max(aA, aB) / kPi * 45.0;
  PairNorms out;
  out.norm_perturbed = std::sqrt(
      2.0 * half_line_integral([&](double x) { return w(x) * std::pow(profile_hat(x, aA), 2); }, upper));
  out.norm_reference = std::sqrt(
      2.0 * half_line_integral([&](double x) { return w(x) * std::pow(profile_hat(x, aB), 2); }, upper));
  out.inner = 2.0 * half_line_integral(
                        [&](double x) { return w(x) * profile_hat(x, aA) * profile_hat(x, aB); }, upper);
  out.d0 = std::sqrt(2.0 * half_line_integral(
                               [&](double x) {
                                 const double d = profile_hat(x, aA) - profile_hat(x, aB);
                                 return w(x) * d * d;
                               },
                               upper));
  out.delta_theta = p.theta(p.gamma_n()) - p.theta(p.gamma);
  return out;
}

ProbeReport separation_experiment(const IllposedFamilyParams& family,
                                  const std::vector<long>& n_list, double t_probe,
                                  int time_samples, std::vector<SeparationRow>* rows) {
  if (n_list.empty()) throw ConfigError("separation experiment needs a nonempty n list");
  if (!(t_probe > 0.0)) throw ConfigError("separation experiment needs t_probe > 0");
  if (time_samples < 1) throw ConfigError("separation experiment needs time_samples >= 1");
  ProbeReport rep;
  rep.probe_name = "illposed_separation";
  rep.set("s", family.s);
  rep.set("gamma", family.gamma);
  rep.set("tau", family.tau);
  rep.set("delta", family.delta);
  rep.set("alpha", family.alpha);
  rep.set("epsilon", static_cast<std::int64_t>(family.epsilon));
  rep.set("t_probe", t_probe);
  rep.set("time_samples", static_cast<std::int64_t>(time_samples));
  rep.set("norm", std::string("H^s with weight (1+|k1|+|k2|)^{2s}, closed-form transforms"));

  std::vector<SeparationRow> local;
  for (long n : n_list) {
    IllposedFamilyParams p = family;
    p.n = n;
    const PairNorms pn = illposed_pair_norms(p);
    std::vector<double> times;
    for (int k = 1; k <= time_samples; ++k) times.push_back(t_probe * k / time_samples);
    // The exact maximizers of 1 - cos(dtheta t) inside the window.
    const double period = kTwoPi / std::abs(pn.delta_theta);
    for (double t = 0.5 * period; t <= t_probe; t += period) times.push_back(t);
    SeparationRow row;
    row.n = n;
    row.gamma_n = p.gamma_n();
    row.d0 = pn.d0;
    row.lower_bound_slack = 1e300;
    for (double t : times) {
      const double d = pn.distance(t);
      if (d > row.d_max) {
        row.d_max = d;
        row.t_at_max = t;
      }
      const double bound = 2.0 * std::abs(std::sin(0.5 * pn.delta_theta * t)) * pn.norm_perturbed - pn.d0;
      row.lower_bound_slack = std::min(row.lower_bound_slack, d - bound);
    }
    row.ratio = row.d_max / row.d0;
    std::ostringstream os;
    os << "n=" << n;
    rep.add(os.str(), row.ratio);
    local.push_back(row);
  }

  bool decreasing = true;
  const SeparationRow* first = nullptr;
  const SeparationRow* at64 = nullptr;
  const SeparationRow* prev = nullptr;
  double min_ratio_32 = 1e300, min_slack = 1e300;
  for (const auto& r : local) {
    min_slack = std::min(min_slack, r.lower_bound_slack);
    if (r.n >= 8) {
      if (!first) first = &r;
      if (prev && !(r.d0 < prev->d0)) decreasing = false;
      prev = &r;
    }
    if (r.n == 64) at64 = &r;
    if (r.n >= 32) min_ratio_32 = std::min(min_ratio_32, r.ratio);
  }
  const SeparationRow* last = at64 ? at64 : prev;
  const double decay = (first && last && first != last) ? last->d0 / first->d0 : 1.0;
  rep.set("d0_decreasing", decreasing);
  rep.set("d0_decay", decay);
  rep.set("min_ratio_n_ge_32", min_ratio_32 < 1e300 ? min_ratio_32 : 0.0);
  rep.set("min_lower_bound_slack", min_slack);
  if (local.size() >= 2) {
    std::vector<double> ns, ds;
    for (const auto& r : local) {
      ns.push_back(static_cast<double>(r.n));
      ds.push_back(r.d0);
    }
    rep.fitted_exponent = fit_loglog_slope(ns, ds);
  }
  rep.tolerance_met = decreasing && decay <= 0.1 && (min_ratio_32 >= 100.0) && min_slack >= -1e-10;
  if (rows) *rows = std::move(local);
  return rep;
}

}  // namespace ninls

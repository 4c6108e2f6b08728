#include <algorithm>
#include <cmath>
#include <random>

#include "ninls/error.hpp"
#include "ninls/norms.hpp"
#include "ninls/report.hpp"
#include "ninls/solver.hpp"

namespace ninls {
namespace {

using Nodes = std::vector<std::vector<cplx>>;

struct Workspace {
  GridPtr grid;
  LinearGroup group;
  SobolevIndex norm;
  std::vector<cplx> scratch;
};

double z_norm_coeffs(const Workspace& w, const std::vector<cplx>& c) {
  return sobolev_norm(Field(w.grid, c, Representation::spectral), w.norm);
}

double z_norm(const Workspace& w, const Nodes& u) {
  double m = 0.0;
  for (const auto& c : u) m = std::max(m, z_norm_coeffs(w, c));
  return m;
}

// Free evolution of a at the nodes j T / steps.
Nodes free_flow(Workspace& w, const std::vector<cplx>& a, double T, int steps) {
  Nodes out(steps + 1, a);
  for (int j = 1; j <= steps; ++j) w.group.apply_coefficients(out[j], j * T / steps);
  return out;
}

// int_0^{t_j} S(t_j - t') |u|^2 u (t') dt' by trapezoid at every node.
Nodes duhamel_cubic(Workspace& w, const Nodes& u, double T, int steps) {
  const auto& g = *w.grid;
  const double h = T / steps;
  Nodes out(steps + 1, std::vector<cplx>(g.size()));
  std::vector<cplx> V(g.size()), Wprev(g.size()), W(g.size());
  for (int j = 0; j <= steps; ++j) {
    w.scratch = u[j];
    coefficients_to_values(g, w.scratch);
    for (auto& z : w.scratch) z *= std::norm(z);
    values_to_coefficients(g, w.scratch);
    W = w.scratch;
    w.group.apply_coefficients(W, -j * h);
    if (j > 0)
      for (std::size_t k = 0; k < V.size(); ++k) V[k] += 0.5 * h * (Wprev[k] + W[k]);
    std::swap(W, Wprev);
    out[j] = V;
    w.group.apply_coefficients(out[j], j * h);
  }
  return out;
}

Nodes difference(const Nodes& a, const Nodes& b) {
  Nodes d = a;
  for (std::size_t j = 0; j < d.size(); ++j)
    for (std::size_t k = 0; k < d[j].size(); ++k) d[j][k] -= b[j][k];
  return d;
}

std::vector<cplx> scaled(const Field& f, double s) {
  auto c = f.to_spectral().data();
  for (auto& z : c) z *= s;
  return c;
}

}  // namespace

ContractionReport contraction_diagnostic(const Field& phi, const ModelParams& params,
                                         const ContractionOptions& opts) {
  params.validate();
  if (phi.grid().spec().geometry != Geometry::RxT)
    throw ConfigError("contraction_diagnostic runs on RxT");
  if (opts.T_list.empty()) throw ConfigError("contraction_diagnostic needs a nonempty T list");
  for (double T : opts.T_list)
    if (!(T > 0.0)) throw ConfigError("contraction_diagnostic needs positive times");
  if (!(opts.s > 0.5)) throw ConfigError("contraction_diagnostic needs s > 1/2");
  if (opts.pairs < 1 || opts.steps < 2) throw ConfigError("contraction_diagnostic needs pairs >= 1 and steps >= 2");

  Workspace w{phi.grid_ptr(), LinearGroup(phi.grid_ptr(), params), SobolevIndex::anisotropic(0.0, opts.s), {}};
  auto Ts = opts.T_list;
  std::sort(Ts.begin(), Ts.end());
  const double Tmax = Ts.back();

  ContractionReport rep;
  const auto c_phi = phi.to_spectral().data();
  const double phi_norm = z_norm_coeffs(w, c_phi);
  if (!(phi_norm > 0.0)) throw ConfigError("contraction_diagnostic needs a nonzero datum");
  rep.C0 = z_norm(w, free_flow(w, c_phi, Tmax, opts.steps)) / phi_norm;
  rep.R = opts.R ? *opts.R : 2.0 * rep.C0 * phi_norm;
  if (!(rep.R > 0.0)) throw ConfigError("contraction radius must be positive");

  // Ball elements are free evolutions of data with H^{0,s} norm below R; the
  // group is unitary in that norm, so the whole path stays in the ball.
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::pair<std::vector<cplx>, std::vector<cplx>>> pairs;
  for (int p = 0; p < opts.pairs; ++p) {
    const Field a = random_band_limited(w.grid, opts.box, opts.seed + 2 * p + 11);
    const Field b = random_band_limited(w.grid, opts.box, opts.seed + 2 * p + 12);
    const double na = sobolev_norm(a, w.norm), nb = sobolev_norm(b, w.norm);
    const double ra = (0.5 + 0.45 * unit(rng)) * rep.R;
    auto ca = scaled(a, ra / na);
    std::vector<cplx> cb;
    if (p % 2 == 0) {
      cb = scaled(b, (0.5 + 0.5 * unit(rng)) * rep.R / nb);
    } else {
      // Nearby pair: probes the local Lipschitz constant.
      cb = scaled(b, 0.05 * rep.R / nb);
      for (std::size_t k = 0; k < cb.size(); ++k) cb[k] += ca[k];
    }
    pairs.emplace_back(std::move(ca), std::move(cb));
  }

  auto lipschitz = [&](double T) {
    double L = 0.0;
    for (const auto& [ca, cb] : pairs) {
      const Nodes u = free_flow(w, ca, T, opts.steps);
      const Nodes v = free_flow(w, cb, T, opts.steps);
      const double den = z_norm(w, difference(u, v));
      if (den == 0.0) continue;
      const double num = z_norm(w, difference(duhamel_cubic(w, u, T, opts.steps),
                                              duhamel_cubic(w, v, T, opts.steps)));
      L = std::max(L, num / den);
    }
    return L;
  };

  double C = 0.0;
  for (double T : Ts) {
    rep.points.push_back({T, lipschitz(T)});
    for (const auto& pr : pairs) {
      const Nodes u = free_flow(w, pr.first, T, opts.steps);
      const double nu = z_norm(w, u);
      const double nd = z_norm(w, duhamel_cubic(w, u, T, opts.steps));
      C = std::max(C, nd / (std::pow(T, 0.75) * nu * nu * nu));
    }
  }
  rep.C = C;
  rep.threshold = std::pow(2.0 * C * rep.R * rep.R, -4.0 / 3.0);
  rep.lipschitz_at_half_threshold = lipschitz(0.5 * rep.threshold);

  std::vector<double> tx, ly;
  for (const auto& pt : rep.points) {
    tx.push_back(pt.T);
    ly.push_back(pt.lipschitz);
  }
  for (std::size_t k = 0; k + 1 < rep.points.size(); ++k)
    rep.halving_ratios.push_back(rep.points[k].lipschitz / rep.points[k + 1].lipschitz);
  rep.fitted_exponent = tx.size() >= 2 ? fit_loglog_slope(tx, ly) : 0.0;
  bool ok = rep.lipschitz_at_half_threshold < 1.0;
  for (const auto& pt : rep.points)
    if (pt.T < rep.threshold && !(pt.lipschitz < 1.0)) ok = false;
  rep.contraction_below_threshold = ok;
  return rep;
}

}  // namespace ninls

#include "ninls/probes.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "fft.hpp"
#include "ninls/error.hpp"
#include "ninls/norms.hpp"

namespace ninls {
namespace {

void require_geometry(const DomainSpec& d, Geometry g, const char* who) {
  if (d.geometry != g) {
    std::ostringstream os;
    os << who << " runs on " << to_string(g) << " (got " << to_string(d.geometry) << ")";
    throw ConfigError(os.str());
  }
}

DomainSpec refined(const DomainSpec& d) {
  DomainSpec r = d;
  r.nx *= 2;
  r.ny *= 2;
  return r;
}

TimeQuadrature denser(const TimeQuadrature& q) {
  TimeQuadrature r = q;
  r.samples_per_unit *= 2;
  r.max_samples *= 2;
  return r;
}

void common_params(ProbeReport& rep, const ModelParams& params, const ProbeSetup& setup) {
  rep.set("alpha", params.alpha);
  rep.set("epsilon", static_cast<std::int64_t>(params.epsilon));
  rep.set("geometry", std::string(to_string(setup.domain.geometry)));
  rep.set("nx", static_cast<std::int64_t>(setup.domain.nx));
  rep.set("ny", static_cast<std::int64_t>(setup.domain.ny));
  rep.set("period_x", setup.domain.period_x);
  rep.set("period_y", setup.domain.period_y);
  rep.set("T", setup.T);
  rep.set("time_samples_per_unit", static_cast<std::int64_t>(setup.quad.samples_per_unit));
  rep.set("time_rel_tol", setup.quad.rel_tol);
  rep.set("box_x", setup.ensemble.box.x_halfwidth);
  rep.set("box_y", setup.ensemble.box.y_halfwidth);
  rep.set("ensemble_gaussian", static_cast<std::int64_t>(setup.ensemble.gaussian));
  rep.set("ensemble_single_modes", static_cast<std::int64_t>(setup.ensemble.single_modes));
  rep.set("ensemble_packets", static_cast<std::int64_t>(setup.ensemble.packets));
  rep.set("generator", std::string(kGeneratorName));
  rep.set("normalization", std::string(kTransformNormalization));
  rep.seeds = {setup.ensemble.seed};
}

// Runs ratio_of over the ensemble on the base grid and, if requested, on the
// refined grid with the same members; records the growth of the max.
template <class RatioFn>
void run_with_refinement(ProbeReport& rep, const ProbeSetup& setup, const RatioFn& ratio_of) {
  auto grid = FourierGrid::make(setup.domain);
  const auto members = make_ensemble(grid, setup.ensemble);
  std::vector<double> base(members.size(), 0.0);
  int unconverged = 0;
  for (std::size_t k = 0; k < members.size(); ++k) {
    bool ok = true;
    base[k] = ratio_of(members, k, setup.quad, ok);
    if (!ok) ++unconverged;
    if (std::isfinite(base[k])) rep.add(members[k].label, base[k]);
  }
  rep.set("base_max", rep.max_ratio);
  rep.set("unconverged_time_integrals", static_cast<std::int64_t>(unconverged));
  if (!setup.check_refinement) {
    rep.tolerance_met = unconverged == 0;
    return;
  }
  auto fine = FourierGrid::make(refined(setup.domain));
  const auto fine_members = make_ensemble(fine, setup.ensemble);
  const auto quad2 = denser(setup.quad);
  double fine_max = 0.0, worst_change = 0.0;
  for (std::size_t k = 0; k < fine_members.size(); ++k) {
    bool ok = true;
    const double r = ratio_of(fine_members, k, quad2, ok);
    if (!ok) ++unconverged;
    if (!std::isfinite(r)) continue;
    fine_max = std::max(fine_max, r);
    if (std::isfinite(base[k]) && base[k] > 0)
      worst_change = std::max(worst_change, std::abs(r / base[k] - 1.0));
  }
  const double growth = fine_max / rep.max_ratio - 1.0;
  rep.set("refined_max", fine_max);
  rep.set("refinement_growth", growth);
  rep.set("max_member_change", worst_change);
  rep.set("unconverged_time_integrals", static_cast<std::int64_t>(unconverged));
  rep.tolerance_met = growth <= 0.05 && unconverged == 0;
}

// int_0^t e^{i mu t'} dt'
cplx phase_integral(double mu, double t) {
  const double x = mu * t;
  if (std::abs(x) < 1e-6) return t * cplx(1.0 - x * x / 6.0, 0.5 * x);
  const double sh = std::sin(0.5 * x);
  return cplx(std::sin(x) / mu, 2.0 * sh * sh / mu);
}

double pth_power_sum(const std::vector<cplx>& u, double p) {
  double acc = 0.0;
  if (p == 4.0) {
    for (const auto& z : u) {
      const double m = std::norm(z);
      acc += m * m;
    }
  } else {
    for (const auto& z : u) acc += std::pow(std::abs(z), p);
  }
  return acc;
}

}  // namespace

double strichartz_ratio(const Field& phi, const ModelParams& params, double T,
                        const TimeQuadrature& quad) {
  const double n2 = lp_norm(phi, 2.0);
  if (!(n2 > 0.0)) return std::nan("");
  return spacetime_lp_linear(phi, params, T, 4.0, quad).value / n2;
}

ProbeReport strichartz_ratio_txr(const ModelParams& params, const ProbeSetup& setup) {
  params.validate();
  params.require_negative_alpha("strichartz_ratio_txr");
  require_geometry(setup.domain, Geometry::TxR, "strichartz_ratio_txr");
  ProbeReport rep;
  rep.probe_name = "strichartz_L4_TxR";
  common_params(rep, params, setup);
  run_with_refinement(rep, setup,
                      [&](const std::vector<EnsembleMember>& m, std::size_t k,
                          const TimeQuadrature& quad, bool& ok) {
                        const double n2 = lp_norm(m[k].data, 2.0);
                        const auto r = spacetime_lp_linear(m[k].data, params, setup.T, 4.0, quad);
                        ok = r.converged;
                        return r.value / n2;
                      });
  return rep;
}

Field duhamel_closed_form(const ForcingSpec& f, const ModelParams& params, double t) {
  if (f.empty()) throw ConfigError("forcing needs at least one term");
  const auto grid = f.front().g.grid_ptr();
  const auto& g = *grid;
  std::vector<cplx> out(g.size());
  for (const auto& term : f) {
    const Field c = term.g.to_spectral();
    if (!(c.grid().spec() == g.spec())) throw ConfigError("forcing terms live on different grids");
    for (int i = 0; i < g.nx(); ++i) {
      for (int j = 0; j < g.ny(); ++j) {
        const auto k = g.index(i, j);
        const cplx a = c.data()[k];
        if (a == cplx(0.0)) continue;
        const double sig = full_symbol(params, g.freqs_x()[i], g.freqs_y()[j]);
        const double mu = sig - term.lambda - (term.follows_flow ? sig : 0.0);
        out[k] += a * std::polar(1.0, -sig * t) * phase_integral(mu, t);
      }
    }
  }
  return Field(grid, std::move(out), Representation::spectral);
}

double duhamel_ratio(const ForcingSpec& f, const ModelParams& params, double T,
                     const TimeQuadrature& quad) {
  if (f.empty()) return std::nan("");
  const auto grid = f.front().g.grid_ptr();
  const auto& g = *grid;
  const double cell = g.cell();
  // Sparse description of the forcing: per term, (index, coefficient, phase rate).
  struct Entry {
    std::size_t k;
    cplx c;
    double rate;
  };
  std::vector<Entry> forcing;
  for (const auto& term : f) {
    const Field c = term.g.to_spectral();
    for (int i = 0; i < g.nx(); ++i) {
      for (int j = 0; j < g.ny(); ++j) {
        const auto k = g.index(i, j);
        const cplx a = c.data()[k];
        if (a == cplx(0.0)) continue;
        const double sig = full_symbol(params, g.freqs_x()[i], g.freqs_y()[j]);
        forcing.push_back({k, a * g.parity_x()[i] * g.parity_y()[j],
                           term.lambda + (term.follows_flow ? sig : 0.0)});
      }
    }
  }
  if (forcing.empty()) return std::nan("");
  std::vector<cplx> buf;
  auto forcing_power = [&](double t) {
    buf.assign(g.size(), cplx(0.0));
    for (const auto& e : forcing) buf[e.k] += e.c * std::polar(1.0, -e.rate * t);
    detail::fft2d(buf.data(), g.nx(), g.ny(), +1);
    return pth_power_sum(buf, 4.0 / 3.0) * cell;
  };
  auto output_power = [&](double t) {
    const Field d = duhamel_closed_form(f, params, t);
    buf = d.data();
    coefficients_to_values(g, buf);
    return pth_power_sum(buf, 4.0) * cell;
  };
  const auto den = adaptive_time_norm(forcing_power, T, 4.0 / 3.0, quad);
  if (!(den.value > 0.0)) return std::nan("");
  const auto num = adaptive_time_norm(output_power, T, 4.0, quad);
  return num.value / den.value;
}

ForcingSpec forcing_for_member(const std::vector<EnsembleMember>& members, std::size_t k,
                               double lambda_max, std::uint64_t seed) {
  std::mt19937_64 rng(seed + 7919 * (k + 1));
  std::uniform_real_distribution<double> lam(-lambda_max, lambda_max);
  ForcingSpec f;
  f.push_back({members[k].data, lam(rng), k % 3 == 0});
  // Every other member superposes a second, differently modulated profile.
  if (k % 2 == 1 && members.size() > 1) {
    const auto& other = members[(k + 1) % members.size()];
    f.push_back({other.data * 0.5, lam(rng), false});
  }
  return f;
}

std::vector<ForcingSpec> make_forcing_ensemble(const std::vector<EnsembleMember>& members,
                                               double lambda_max, std::uint64_t seed) {
  std::vector<ForcingSpec> out;
  for (std::size_t k = 0; k < members.size(); ++k)
    out.push_back(forcing_for_member(members, k, lambda_max, seed));
  return out;
}

ProbeReport strichartz_ratio_duhamel_txr(const ModelParams& params, const ProbeSetup& setup,
                                         double lambda_max) {
  params.validate();
  params.require_negative_alpha("strichartz_ratio_duhamel_txr");
  require_geometry(setup.domain, Geometry::TxR, "strichartz_ratio_duhamel_txr");
  ProbeReport rep;
  rep.probe_name = "strichartz_duhamel_TxR";
  common_params(rep, params, setup);
  rep.set("lambda_max", lambda_max);
  run_with_refinement(rep, setup,
                      [&](const std::vector<EnsembleMember>& m, std::size_t k,
                          const TimeQuadrature& quad, bool& ok) {
                        ok = true;
                        const auto f = forcing_for_member(m, k, lambda_max, setup.ensemble.seed);
                        return duhamel_ratio(f, params, setup.T, quad);
                      });
  return rep;
}

double mixed_norm_ratio(const Field& f, const ModelParams& params, double T, double q, double p,
                        double s, const TimeQuadrature& quad) {
  if (!is_admissible(q, p)) {
    std::ostringstream os;
    os << "(q, p) = (" << q << ", " << p << ") is not admissible";
    throw ConfigError(os.str());
  }
  const double den = sobolev_norm(f, SobolevIndex::anisotropic(0.0, s));
  if (!(den > 0.0)) return std::nan("");
  LinearGroup group(f.grid_ptr(), params);
  const Field c = f.to_spectral();
  auto F = [&](double t) {
    const double h = lp_x_hs_y(group.apply(c, t), p, s);
    return std::pow(h, q);
  };
  return adaptive_time_norm(F, T, q, quad).value / den;
}

ProbeReport mixed_norm_strichartz_rxt(const ModelParams& params, const ProbeSetup& setup, double q,
                                      double p, double s) {
  params.validate();
  require_geometry(setup.domain, Geometry::RxT, "mixed_norm_strichartz_rxt");
  if (!is_admissible(q, p)) {
    std::ostringstream os;
    os << "(q, p) = (" << q << ", " << p << ") is not admissible";
    throw ConfigError(os.str());
  }
  ProbeReport rep;
  rep.probe_name = "mixed_norm_RxT";
  common_params(rep, params, setup);
  rep.set("q", q);
  rep.set("p", p);
  rep.set("s", s);
  run_with_refinement(rep, setup,
                      [&](const std::vector<EnsembleMember>& m, std::size_t k,
                          const TimeQuadrature& quad, bool& ok) {
                        ok = true;
                        return mixed_norm_ratio(m[k].data, params, setup.T, q, p, s, quad);
                      });
  return rep;
}

DomainSpec decoupling_domain(int N) {
  if (N < 1) throw ConfigError("decoupling probe needs N >= 1");
  const int kx = static_cast<int>(std::floor(std::sqrt(0.5 * N) + 1e-12));
  auto pow2_above = [](int m) {
    int n = 8;
    while (n <= m) n *= 2;
    return n;
  };
  return DomainSpec::torus(pow2_above(4 * kx), pow2_above(4 * N));
}

ProbeReport decoupling_growth_probe(const DecouplingOptions& opts) {
  if (opts.N_list.size() < 2) throw ConfigError("decoupling probe needs at least two N values");
  for (std::size_t k = 1; k < opts.N_list.size(); ++k)
    if (opts.N_list[k] <= opts.N_list[k - 1]) throw ConfigError("N_list must increase");
  ModelParams params{0, opts.alpha, Nonlinearity::defocusing};
  params.validate();
  params.require_negative_alpha("decoupling_growth_probe");

  ProbeReport rep;
  rep.probe_name = "decoupling_growth_T2";
  rep.set("alpha", opts.alpha);
  rep.set("epsilon_model", static_cast<std::int64_t>(0));
  rep.set("T", opts.T);
  rep.set("derivative_exponent", opts.derivative_exponent);
  rep.set("derivative", std::string("homogeneous |k|^s, zero mode annihilated"));
  rep.set("ensemble_size", static_cast<std::int64_t>(opts.ensemble.size()));
  rep.set("generator", std::string(kGeneratorName));
  rep.set("normalization", std::string(kTransformNormalization));
  rep.seeds = {opts.ensemble.seed};

  std::vector<double> Ns, raw_max, d_max;
  int unconverged = 0;
  for (int N : opts.N_list) {
    const DomainSpec dom = decoupling_domain(N);
    auto grid = FourierGrid::make(dom);
    EnsembleSpec es = opts.ensemble;
    es.box = FrequencyBox::decoupling(N);
    es.packets_in_box = true;
    // Packet widths follow the y extent of the box.
    const double scale = std::max(1.0, N / 8.0);
    es.kappa_min = opts.ensemble.kappa_min * scale;
    es.kappa_max = opts.ensemble.kappa_max * scale;
    es.seed = opts.ensemble.seed + 1000003ULL * static_cast<std::uint64_t>(N);
    const auto members = make_ensemble(grid, es);
    double best = 0.0, best_d = 0.0;
    const double beta = opts.derivative_exponent;
    for (const auto& m : members) {
      const double n2 = lp_norm(m.data, 2.0);
      FlowSampler plain(m.data, params);
      FlowSampler weighted(m.data, params, [beta](double k1, double k2) {
        const double r2 = k1 * k1 + k2 * k2;
        return r2 == 0.0 ? 0.0 : std::pow(r2, 0.5 * beta);
      });
      const double cell = grid->cell();
      std::vector<cplx> u;
      auto F = [&](const FlowSampler& s) {
        return [&](double t) {
          s.values(t, u);
          return pth_power_sum(u, 4.0) * cell;
        };
      };
      const auto a = adaptive_time_norm(F(plain), opts.T, 4.0, opts.quad);
      const auto b = adaptive_time_norm(F(weighted), opts.T, 4.0, opts.quad);
      if (!a.converged) ++unconverged;
      if (!b.converged) ++unconverged;
      best = std::max(best, a.value / n2);
      best_d = std::max(best_d, b.value / n2);
    }
    std::ostringstream os;
    os << "N=" << N;
    rep.add(os.str(), best);
    rep.set("D_max_" + os.str(), best_d);
    rep.set("grid_" + os.str(), std::to_string(dom.nx) + "x" + std::to_string(dom.ny));
    Ns.push_back(N);
    raw_max.push_back(best);
    d_max.push_back(best_d);
  }
  rep.fitted_exponent = fit_loglog_slope(Ns, raw_max);
  const double d_slope = fit_loglog_slope(Ns, d_max);
  rep.set("D_slope", d_slope);
  rep.set("unconverged_time_integrals", static_cast<std::int64_t>(unconverged));
  rep.tolerance_met = *rep.fitted_exponent <= 0.125 + 0.05 && std::abs(d_slope) <= 0.05 &&
                      unconverged == 0;
  return rep;
}

}  // namespace ninls

#include "ninls/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ninls/error.hpp"
#include "ninls/norms.hpp"

namespace ninls {
namespace {

double quadratic_form(const Field& f, double wx2, double wx4, double wy2) {
  const Field a = f.to_spectral();
  const auto& g = a.grid();
  double acc = 0.0;
  for (int i = 0; i < g.nx(); ++i) {
    const double k = g.freqs_x()[i];
    const double kx = wx2 * k * k + wx4 * k * k * k * k;
    for (int j = 0; j < g.ny(); ++j) {
      const double l = g.freqs_y()[j];
      acc += (kx + wy2 * l * l) * std::norm(a.data()[g.index(i, j)]);
    }
  }
  return acc * g.area();
}

double quartic(const Field& f) {
  const Field u = f.to_physical();
  double acc = 0.0;
  for (const auto& z : u.data()) {
    const double m = std::norm(z);
    acc += m * m;
  }
  return acc * u.grid().cell();
}

void require_finite(const std::vector<cplx>& d, double t) {
  double acc = 0.0;
  for (const auto& z : d) acc += std::norm(z);
  if (!std::isfinite(acc)) {
    std::ostringstream os;
    os << "non-finite state at t = " << t;
    throw NumericalError(NumericalFailure::nan_detected, os.str());
  }
}

bool keep_step(long step, long total, int every) { return step % every == 0 || step == total; }

void run_split_step(const Field& phi, const ModelParams& params, const SolverConfig& cfg,
                    Trajectory& out) {
  const auto grid = phi.grid_ptr();
  const auto& g = *grid;
  const long n = cfg.steps();
  const double h = cfg.t_final / n;
  const double s = params.sign_factor();
  LinearGroup group(grid, params);
  std::vector<cplx> lin(g.size());
  const auto mask = dealias_mask(g);
  for (std::size_t k = 0; k < lin.size(); ++k) {
    const double ph = -h * group.symbol()[k];
    lin[k] = (cfg.dealias && !mask[k]) ? cplx(0.0) : cplx(std::cos(ph), std::sin(ph));
  }
  auto half_nonlinear = [&](std::vector<cplx>& u) {
    for (auto& z : u) {
      const double ph = -s * std::norm(z) * 0.5 * h;
      z *= cplx(std::cos(ph), std::sin(ph));
    }
  };

  std::vector<cplx> u = phi.to_physical().data();
  out.append(0.0, Field(grid, u, Representation::physical), params);
  for (long step = 1; step <= n; ++step) {
    half_nonlinear(u);
    values_to_coefficients(g, u);
    for (std::size_t k = 0; k < u.size(); ++k) u[k] *= lin[k];
    coefficients_to_values(g, u);
    half_nonlinear(u);
    require_finite(u, step * h);
    if (keep_step(step, n, cfg.save_every))
      out.append(step * h, Field(grid, u, Representation::physical), params);
  }
}

void run_picard(const Field& phi, const ModelParams& params, const SolverConfig& cfg,
                Trajectory& out, PicardStats* stats) {
  const auto grid = phi.grid_ptr();
  const auto& g = *grid;
  const long n = cfg.steps();
  const double h = cfg.t_final / n;
  const double s = params.sign_factor();
  const cplx minus_i_s(0.0, -s);
  LinearGroup group(grid, params);
  const auto mask = dealias_mask(g);
  std::vector<cplx> step_phase(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double ph = -h * group.symbol()[k];
    step_phase[k] = cplx(std::cos(ph), std::sin(ph));
  }

  std::vector<cplx> c0 = phi.to_spectral().data();
  out.append(0.0, Field(grid, c0, Representation::spectral), params);
  PicardStats local;
  long done = 0;
  std::vector<cplx> work(g.size()), V(g.size()), W(g.size()), Wprev(g.size()), P(g.size());
  while (done < n) {
    // Window length from the local contraction proxy h_* = 1 / (3 ||u||_inf^2).
    auto phys = c0;
    coefficients_to_values(g, phys);
    double umax = 0.0;
    for (const auto& z : phys) umax = std::max(umax, std::abs(z));
    long m = cfg.picard_window_steps;
    if (umax > 0.0) {
      const double thr = 1.0 / (3.0 * umax * umax);
      m = std::min<long>(m, std::max<long>(1, static_cast<long>(std::floor(thr / (2.0 * h)))));
    }
    m = std::min(m, n - done);

    double datum_norm = 0.0;
    for (const auto& z : c0) datum_norm += std::norm(z);
    datum_norm = std::sqrt(datum_norm);

    // Initial iterate: the free evolution of the window datum.
    std::vector<std::vector<cplx>> U(m + 1, c0);
    std::fill(P.begin(), P.end(), cplx(1.0));
    for (long j = 1; j <= m; ++j) {
      for (std::size_t k = 0; k < P.size(); ++k) {
        P[k] *= step_phase[k];
        U[j][k] = P[k] * c0[k];
      }
    }

    int iter = 0;
    for (;;) {
      ++iter;
      double max_change = 0.0, max_norm = 0.0;
      std::fill(V.begin(), V.end(), cplx(0.0));
      std::fill(P.begin(), P.end(), cplx(1.0));
      for (long j = 0; j <= m; ++j) {
        if (j > 0)
          for (std::size_t k = 0; k < P.size(); ++k) P[k] *= step_phase[k];
        work = U[j];
        coefficients_to_values(g, work);
        for (auto& z : work) z *= std::norm(z);
        values_to_coefficients(g, work);
        for (std::size_t k = 0; k < W.size(); ++k) {
          const cplx nk = (cfg.dealias && !mask[k]) ? cplx(0.0) : work[k];
          W[k] = std::conj(P[k]) * nk;
        }
        if (j > 0)
          for (std::size_t k = 0; k < V.size(); ++k) V[k] += 0.5 * h * (Wprev[k] + W[k]);
        std::swap(Wprev, W);
        double diff = 0.0, nrm = 0.0;
        for (std::size_t k = 0; k < V.size(); ++k) {
          const cplx nv = P[k] * (c0[k] + minus_i_s * V[k]);
          diff += std::norm(nv - U[j][k]);
          nrm += std::norm(nv);
          U[j][k] = nv;
        }
        max_change = std::max(max_change, std::sqrt(diff));
        max_norm = std::max(max_norm, std::sqrt(nrm));
      }
      const double rel = max_norm > 0.0 ? max_change / max_norm : 0.0;
      // The relative change saturates near 1 once iterates blow up, so growth
      // of the iterates themselves is what signals divergence.
      if (!std::isfinite(rel) || max_norm > 1e3 * datum_norm) {
        std::ostringstream os;
        os << "Picard iterates blow up in the window starting at t = " << done * h
           << " (iteration " << iter << ")";
        throw NumericalError(NumericalFailure::picard_divergence, os.str());
      }
      if (local.windows == 0) local.first_window_changes.push_back(rel);
      if (rel < cfg.picard_tol) break;
      if (iter >= cfg.picard_max_iters) {
        std::ostringstream os;
        os << "no convergence in window starting at t = " << done * h << " after " << iter
           << " iterations (relative change " << rel << ")";
        throw NumericalError(NumericalFailure::picard_divergence, os.str());
      }
    }
    local.windows += 1;
    local.total_iterations += iter;
    local.max_iterations = std::max(local.max_iterations, iter);
    local.window_steps = std::max<int>(local.window_steps, static_cast<int>(m));
    for (long j = 1; j <= m; ++j) {
      const long step = done + j;
      if (keep_step(step, n, cfg.save_every))
        out.append(step * h, Field(grid, U[j], Representation::spectral), params);
    }
    c0 = U[m];
    done += m;
    if (stats) *stats = local;
  }
  if (stats) *stats = local;
}

}  // namespace

const char* to_string(Scheme s) { return s == Scheme::picard ? "picard" : "split_step"; }

Scheme parse_scheme(const std::string& s) {
  if (s == "picard") return Scheme::picard;
  if (s == "split_step") return Scheme::split_step;
  throw ConfigError("scheme must be 'picard' or 'split_step' (got '" + s + "')");
}

void SolverConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive");
  if (!(t_final > 0.0) || !std::isfinite(t_final)) throw ConfigError("t_final must be positive");
  if (dt > t_final) throw ConfigError("dt must not exceed t_final");
  if (!(picard_tol > 0.0)) throw ConfigError("picard_tol must be positive");
  if (picard_max_iters < 1) throw ConfigError("picard_max_iters must be >= 1");
  if (save_every < 1) throw ConfigError("save_every must be >= 1");
  if (picard_window_steps < 1) throw ConfigError("picard_window_steps must be >= 1");
}

long SolverConfig::steps() const { return std::max<long>(1, std::llround(t_final / dt)); }

double mass(const Field& f) {
  const Field u = f.to_physical();
  double acc = 0.0;
  for (const auto& z : u.data()) acc += std::norm(z);
  return acc * u.grid().cell();
}

double energy(const Field& f, const ModelParams& params) {
  return quadratic_form(f, params.epsilon, params.alpha, 1.0) +
         0.25 * params.sign_factor() * quartic(f);
}

double energy_unweighted(const Field& f, const ModelParams& params) {
  return quadratic_form(f, 1.0, params.alpha, 1.0) + 0.25 * params.sign_factor() * quartic(f);
}

double hamiltonian(const Field& f, const ModelParams& params) {
  return quadratic_form(f, params.epsilon, -params.alpha, 1.0) +
         0.5 * params.sign_factor() * quartic(f);
}

void solve_into(const Field& phi, const ModelParams& params, const SolverConfig& cfg,
                Trajectory& out, PicardStats* stats) {
  params.validate();
  cfg.validate();
  if (!phi.all_finite()) throw ConfigError("initial datum is not finite");
  if (cfg.scheme == Scheme::split_step) {
    run_split_step(phi, params, cfg, out);
  } else {
    run_picard(phi, params, cfg, out, stats);
  }
}

Trajectory solve(const Field& phi, const ModelParams& params, const SolverConfig& cfg,
                 PicardStats* stats) {
  Trajectory out;
  solve_into(phi, params, cfg, out, stats);
  return out;
}

}  // namespace ninls

#include "ninls/counting.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "ninls/error.hpp"
#include "quadrature.hpp"

namespace ninls {
namespace {

double pos_sqrt(double x) { return x > 0.0 ? std::sqrt(x) : 0.0; }

void require_alpha(double alpha) {
  if (!(alpha < 0.0) || !std::isfinite(alpha))
    throw ConfigError("counting measures require alpha < 0");
}

// Length of [a0, a1] intersect [b0, b1].
double overlap(double a0, double a1, double b0, double b1) {
  return std::max(0.0, std::min(a1, b1) - std::max(a0, b0));
}

}  // namespace

double omega_unit(double alpha, double n) { return n * n - alpha * n * n * n * n; }

double xstar(double alpha, double gamma) {
  require_alpha(alpha);
  if (!(gamma >= 0.0)) throw ConfigError("xstar needs gamma >= 0");
  // sqrt(1 + a) - 1 written without cancellation.
  const double a = -4.0 * alpha * gamma;
  const double r = a / (std::sqrt(1.0 + a) + 1.0);
  return std::sqrt(r / (-2.0 * alpha));
}

void LevelSetQuery::validate() const {
  require_alpha(alpha);
  if (!(C >= 0.0)) throw ConfigError("level set needs C >= 0");
  if (!(K >= 1.0)) throw ConfigError("level set needs K >= 1");
  if (n0 < 0) throw ConfigError("level set needs n0 >= 0");
}

double levelset_measure(const LevelSetQuery& q) {
  q.validate();
  const long bound = static_cast<long>(std::floor(xstar(q.alpha, 2.0 * (q.C + q.K)))) +
                     std::labs(q.n0) + 1;
  double acc = 0.0;
  for (long n = -bound; n <= bound; ++n) {
    const double w = 0.5 * (omega_unit(q.alpha, n) + omega_unit(q.alpha, n - q.n0));
    acc += 2.0 * (pos_sqrt(q.C + q.K - w) - pos_sqrt(q.C - w));
  }
  return acc;
}

ProbeReport counting_lemma_sweep(double alpha, const std::vector<double>& K_grid,
                                 const std::vector<double>& C_grid,
                                 const std::vector<long>& n0_grid,
                                 std::vector<CountingRow>* rows) {
  require_alpha(alpha);
  if (K_grid.empty() || C_grid.empty() || n0_grid.empty())
    throw ConfigError("counting sweep needs nonempty K, C and n0 grids");
  ProbeReport rep;
  rep.probe_name = "counting_lemma";
  rep.set("alpha", alpha);
  rep.set("K_points", static_cast<std::int64_t>(K_grid.size()));
  rep.set("C_points", static_cast<std::int64_t>(C_grid.size()));
  rep.set("n0_points", static_cast<std::int64_t>(n0_grid.size()));
  std::vector<double> ks, maxima;
  for (double K : K_grid) {
    double best = 0.0;
    for (double C : C_grid) {
      for (long n0 : n0_grid) {
        const double m = levelset_measure({alpha, C, K, n0});
        const double r = m / K;
        best = std::max(best, r);
        if (rows) rows->push_back({alpha, C, K, n0, m, r});
      }
    }
    std::ostringstream os;
    os << "K=" << format_double(K);
    rep.add(os.str(), best);
    ks.push_back(K);
    maxima.push_back(best);
  }
  if (ks.size() >= 2) rep.fitted_exponent = fit_loglog_slope(ks, maxima);
  rep.tolerance_met = rep.max_ratio <= 10.0 &&
                      (!rep.fitted_exponent || std::abs(*rep.fitted_exponent) <= 0.05);
  return rep;
}

void ShellQuery::validate() const {
  require_alpha(alpha);
  if (!(K1 >= 1.0) || !(K2 >= 1.0)) throw ConfigError("shell widths need K1, K2 >= 1");
  if (!std::isfinite(tau) || !std::isfinite(xi)) throw ConfigError("shell query needs finite tau, xi");
}

namespace {

template <class F>
void for_each_shell_row(const ShellQuery& q, const F& f) {
  const double K = q.K1 + q.K2;
  const double room = std::max(0.0, K - 0.25 * q.xi * q.xi - 0.5 * q.tau);
  const long bound = static_cast<long>(std::floor(xstar(q.alpha, 2.0 * room))) + 1;
  for (long n1 = -bound; n1 <= bound; ++n1) {
    const double V = 0.5 * omega_unit(q.alpha, n1) + 0.5 * omega_unit(q.alpha, q.n - n1) +
                     0.25 * q.xi * q.xi + 0.5 * q.tau;
    if (V > K) continue;
    f(n1, pos_sqrt(-K - V), std::sqrt(K - V));
  }
}

}  // namespace

double shell_measure_B(const ShellQuery& q) {
  q.validate();
  double acc = 0.0;
  for_each_shell_row(q, [&](long, double lo, double hi) { acc += 2.0 * (hi - lo); });
  return acc;
}

double shell_measure_A(const ShellQuery& q, double* achieved_error) {
  q.validate();
  const double tol = 1e-8 * (q.K1 + q.K2);
  detail::AdaptiveSimpson simpson;
  double acc = 0.0;
  // Count the pieces first so the tolerance budget can be split evenly.
  int pieces = 0;
  for_each_shell_row(q, [&](long, double lo, double hi) {
    if (hi > lo) pieces += 1;
  });
  if (pieces == 0) {
    if (achieved_error) *achieved_error = 0.0;
    return 0.0;
  }
  const double piece_tol = tol / pieces;
  for_each_shell_row(q, [&](long n1, double lo, double hi) {
    if (!(hi > lo)) return;
    const double wa = omega_unit(q.alpha, n1);
    const double wb = omega_unit(q.alpha, q.n - n1);
    auto section = [&](double xi1) {
      const double a = wa + xi1 * xi1;
      const double b = wb + (q.xi - xi1) * (q.xi - xi1);
      const double c = q.tau + b;
      double len = 0.0;
      const double j1[2][2] = {{-a + 0.5 * q.K1, -a + 2.0 * q.K1}, {-a - 2.0 * q.K1, -a - 0.5 * q.K1}};
      const double j2[2][2] = {{c - 2.0 * q.K2, c - 0.5 * q.K2}, {c + 0.5 * q.K2, c + 2.0 * q.K2}};
      for (const auto& u : j1)
        for (const auto& v : j2) len += overlap(u[0], u[1], v[0], v[1]);
      return len;
    };
    const double c = 0.5 * q.xi;
    auto both = [&](double eta) { return section(c + eta) + section(c - eta); };
    acc += simpson.run(both, lo, hi, piece_tol);
  });
  if (achieved_error) *achieved_error = simpson.error;
  if (!simpson.converged) {
    std::ostringstream os;
    os << "shell measure A reached the depth limit; achieved error " << simpson.error
       << " against tolerance " << tol;
    throw NumericalError(NumericalFailure::quadrature_not_converged, os.str());
  }
  return acc;
}

ProbeReport bilinear_sweep(double alpha, int points, double K_min, double K_max,
                           std::uint64_t seed, std::vector<BilinearRow>* rows) {
  require_alpha(alpha);
  if (points < 1) throw ConfigError("bilinear sweep needs at least one point");
  if (!(K_min >= 1.0) || !(K_max >= K_min)) throw ConfigError("bilinear sweep needs 1 <= K_min <= K_max");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<long> pick_n(-10, 10);

  ProbeReport rep;
  rep.probe_name = "bilinear_shells";
  rep.seeds = {seed};
  rep.set("alpha", alpha);
  rep.set("points", static_cast<std::int64_t>(points));
  rep.set("K_min", K_min);
  rep.set("K_max", K_max);
  rep.set("generator", std::string(kGeneratorName));

  bool chain_ok = true;
  double max_ab = 0.0, max_prod = 0.0, max_sqrt = 0.0;
  std::vector<double> prod_k, prod_ratio;
  for (int p = 0; p < points; ++p) {
    ShellQuery q;
    q.alpha = alpha;
    q.K1 = K_min * std::pow(K_max / K_min, unit(rng));
    q.K2 = K_min * std::pow(K_max / K_min, unit(rng));
    q.n = pick_n(rng);
    q.xi = -10.0 + 20.0 * unit(rng);
    // Place tau so the shell window lands near the bottom of the symbol:
    // some points give empty sets, most give nontrivial ones.
    double wmin = 1e300;
    for (long n1 = -std::labs(q.n) - 2; n1 <= std::labs(q.n) + 2; ++n1)
      wmin = std::min(wmin, 0.5 * omega_unit(alpha, n1) + 0.5 * omega_unit(alpha, q.n - n1));
    const double r = -2.0 + 3.0 * unit(rng);
    q.tau = 2.0 * (-wmin - 0.25 * q.xi * q.xi + r * (q.K1 + q.K2));

    const double mB = shell_measure_B(q);
    const double mA = shell_measure_A(q);
    const double kmax = std::max(q.K1, q.K2);
    BilinearRow row{q, mA, mB, mB / (q.K1 + q.K2), mB > 0 ? mA / (kmax * mB) : 0.0,
                    std::sqrt(mA) / (q.K1 * q.K2), std::sqrt(mA / (q.K1 * q.K2))};
    if (mA > 4.0 * kmax * mB * (1.0 + 1e-6)) chain_ok = false;
    max_ab = std::max(max_ab, row.ratio_AB);
    max_prod = std::max(max_prod, row.ratio_A_product);
    max_sqrt = std::max(max_sqrt, row.ratio_A_sqrt);
    if (mA > 0) {
      prod_k.push_back(q.K1 * q.K2);
      prod_ratio.push_back(row.ratio_A_product);
    }
    std::ostringstream os;
    os << "tau=" << format_double(q.tau) << ";xi=" << format_double(q.xi) << ";n=" << q.n
       << ";K1=" << format_double(q.K1) << ";K2=" << format_double(q.K2);
    rep.add(os.str(), row.ratio_B);
    if (rows) rows->push_back(row);
  }
  rep.set("max_A_over_maxK_B", max_ab);
  rep.set("max_sqrtA_over_K1K2", max_prod);
  rep.set("max_sqrtA_over_sqrtK1K2", max_sqrt);
  rep.set("chain_inequality_holds", chain_ok);
  if (prod_k.size() >= 2) {
    // Slope of sqrt(m(A))/(K1 K2) against K1 K2: about -1/2 when the
    // sqrt(K1 K2) normalization is the tight one.
    const double slope = fit_loglog_slope(prod_k, prod_ratio);
    rep.set("slope_sqrtA_over_K1K2", slope);
    rep.set("tight_normalization",
            std::string(slope < -0.25 ? "sqrt(K1*K2)" : "K1*K2"));
  }
  rep.tolerance_met = rep.max_ratio <= 10.0 && chain_ok;
  return rep;
}

}  // namespace ninls

#pragma once

#include <cstdint>
#include <vector>

#include "ninls/report.hpp"

namespace ninls {

// omega(n) = n^2 - alpha n^4, the epsilon = 1 dispersion used by the counting bounds.
double omega_unit(double alpha, double n);

// Positive root of x^2 - alpha x^4 = gamma for alpha < 0, gamma >= 0.
double xstar(double alpha, double gamma);

// G_K = {(n, xi): C <= xi^2 + omega(n)/2 + omega(n - n0)/2 <= C + K}
struct LevelSetQuery {
  double alpha = -1.0;
  double C = 0.0;
  double K = 1.0;
  long n0 = 0;
  void validate() const;
};

// Counting measure in n times Lebesgue measure in xi, exact.
double levelset_measure(const LevelSetQuery& q);

struct CountingRow {
  double alpha, C, K;
  long n0;
  double measure, ratio;
};

// Max over (C, n0) of m(G_K)/K for each K, the global max and the log-log slope.
ProbeReport counting_lemma_sweep(double alpha, const std::vector<double>& K_grid,
                                 const std::vector<double>& C_grid,
                                 const std::vector<long>& n0_grid,
                                 std::vector<CountingRow>* rows = nullptr);

struct ShellQuery {
  double alpha = -1.0;
  double tau = 0.0;
  double xi = 0.0;
  long n = 0;
  double K1 = 1.0;
  double K2 = 1.0;
  void validate() const;
};

// B = {(n1, xi1): |(xi1 - xi/2)^2 + omega(n1)/2 + omega(n - n1)/2 + xi^2/4 + tau/2| <= K1 + K2}
double shell_measure_B(const ShellQuery& q);

// A = {(tau1, n1, xi1): K1/2 <= |tau1 + omega(n1) + xi1^2| <= 2 K1,
//                       K2/2 <= |tau - tau1 + omega(n - n1) + (xi - xi1)^2| <= 2 K2}
// The tau1 section is intersected exactly; xi1 is integrated by adaptive
// Simpson to absolute tolerance 1e-8 (K1 + K2). achieved_error, if given,
// receives the summed Richardson error estimate.
double shell_measure_A(const ShellQuery& q, double* achieved_error = nullptr);

struct BilinearRow {
  ShellQuery query;
  double measure_A, measure_B;
  double ratio_B;          // m(B) / (K1 + K2)
  double ratio_AB;         // m(A) / (max(K1, K2) m(B)), 0 when B is empty
  // The bilinear constant scales like sqrt(m(A)); these are that constant
  // against K1 K2 and against sqrt(K1 K2).
  double ratio_A_product;  // sqrt(m(A)) / (K1 K2)
  double ratio_A_sqrt;     // sqrt(m(A)) / sqrt(K1 K2)
};

// Random (tau, xi, n, K1, K2) sweep with K1, K2 log-uniform in [K_min, K_max].
ProbeReport bilinear_sweep(double alpha, int points, double K_min, double K_max,
                           std::uint64_t seed, std::vector<BilinearRow>* rows = nullptr);

}  // namespace ninls

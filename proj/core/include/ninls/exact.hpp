#pragma once

#include <utility>
#include <vector>

#include "ninls/report.hpp"
#include "ninls/spectral.hpp"

namespace ninls {

// u = sqrt(2 sigma) e^{i theta t} e^{i n x} sech(sqrt(sigma) y) solves the
// focusing equation on TxR when sigma = eps n^2 - alpha n^4 + theta > 0.
struct StandingWaveParams {
  long n = 0;
  double theta = 1.0;
  double alpha = -1.0;
  int epsilon = 1;

  double sigma() const;
  void validate() const;
  // Focusing model with the same alpha and epsilon.
  ModelParams model() const;
};

Field standing_wave(const StandingWaveParams& p, double t, GridPtr grid);

// max over the y points of |-phi'' + sigma phi - phi^3| for
// phi = amplitude_factor sqrt(2 sigma) sech(sqrt(sigma) y), with phi''
// from spectral differentiation on the grid's y direction.
double profile_ode_residual(const StandingWaveParams& p, GridPtr grid,
                            double amplitude_factor = 1.0);

// max |i u_t + eps u_xx + u_yy + alpha u_xxxx + |u|^2 u| at time t, analytic
// time derivative and spectral space derivatives.
double pde_residual_standing_wave(const StandingWaveParams& p, double t, GridPtr grid,
                                  double amplitude_factor = 1.0);

// The two standing-wave families with scales a = gamma_n n^{-2s} and
// a = gamma n^{-2s}, where (gamma^2 - gamma_n^2) n^{-4s} = tau n^delta.
struct IllposedFamilyParams {
  double s = -0.25;
  double gamma = 1.0;
  double tau = 1.0;
  double delta = 0.5;
  long n = 8;
  double alpha = -1.0;
  int epsilon = 1;

  void validate() const;
  double gamma_n() const;
  // theta_{g,n} = g^2 n^{-4s} - eps n^2 + alpha n^4
  double theta(double g) const;
  StandingWaveParams perturbed() const;  // uses gamma_n
  StandingWaveParams reference() const;  // uses gamma
};

// (u_{gamma_n,n}(t), u_{gamma,n}(t)) sampled on a TxR grid.
// Throws ConfigError when the box is shorter than 20 widths (1/a) of the widest profile.
std::pair<Field, Field> illposed_pair(const IllposedFamilyParams& p, double t, GridPtr grid);

// Sum-bracket H^s quantities of the pair evaluated from the closed-form
// Fourier transform sqrt(2) pi sech(pi xi / (2a)) of sqrt(2) a sech(a y),
// integrated over xi by adaptive quadrature.
struct PairNorms {
  double norm_perturbed = 0.0;
  double norm_reference = 0.0;
  double inner = 0.0;  // real and positive: both profiles are even and positive
  double d0 = 0.0;
  double delta_theta = 0.0;  // theta_perturbed - theta_reference = -tau n^delta

  // ||u_{gamma_n,n}(t) - u_{gamma,n}(t)||_{H^s}
  double distance(double t) const;
};

PairNorms illposed_pair_norms(const IllposedFamilyParams& p);

struct SeparationRow {
  long n = 0;
  double gamma_n = 0.0;
  double d0 = 0.0;
  double d_max = 0.0;
  double ratio = 0.0;
  double t_at_max = 0.0;
  // min over the time grid of d(n,t) - (|e^{i dtheta t} - 1| ||u_{gamma_n,n}|| - d0)
  double lower_bound_slack = 0.0;
};

ProbeReport separation_experiment(const IllposedFamilyParams& family,
                                  const std::vector<long>& n_list, double t_probe,
                                  int time_samples = 1000,
                                  std::vector<SeparationRow>* rows = nullptr);

}  // namespace ninls

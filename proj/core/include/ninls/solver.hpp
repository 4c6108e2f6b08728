#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ninls/propagator.hpp"
#include "ninls/spectral.hpp"
#include "ninls/trajectory.hpp"

namespace ninls {

enum class Scheme { picard, split_step };

const char* to_string(Scheme s);
Scheme parse_scheme(const std::string& s);

struct SolverConfig {
  Scheme scheme = Scheme::split_step;
  double dt = 1e-4;
  double t_final = 0.1;
  int picard_max_iters = 50;
  double picard_tol = 1e-10;
  bool dealias = true;
  // Keep every save_every-th step (the final step is always kept).
  int save_every = 1;
  // Upper bound on steps per Picard window.
  int picard_window_steps = 50;

  void validate() const;
  // Number of steps; the effective step is t_final / steps().
  long steps() const;
};

struct PicardStats {
  int windows = 0;
  int total_iterations = 0;
  int max_iterations = 0;
  int window_steps = 0;
  // Successive relative changes in the first window.
  std::vector<double> first_window_changes;
};

double mass(const Field& f);
// int eps|u_x|^2 + |u_y|^2 + alpha|u_xx|^2 + sign/4 |u|^4 with sign = +1 defocusing.
double energy(const Field& f, const ModelParams& params);
// Same with the |u_x|^2 term unweighted by epsilon.
double energy_unweighted(const Field& f, const ModelParams& params);
// int eps|u_x|^2 + |u_y|^2 - alpha|u_xx|^2 + sign/2 |u|^4, conserved by the flow.
double hamiltonian(const Field& f, const ModelParams& params);

// Runs the chosen scheme from phi. Snapshots are appended to out as they are
// produced, so on a NumericalError out holds everything computed so far.
void solve_into(const Field& phi, const ModelParams& params, const SolverConfig& cfg,
                Trajectory& out, PicardStats* stats = nullptr);
Trajectory solve(const Field& phi, const ModelParams& params, const SolverConfig& cfg,
                 PicardStats* stats = nullptr);

// Empirical Lipschitz constant of the Duhamel map on a ball, in the norm
// sup_t ||u(t)||_{H^{0,s}} on [0, T].
struct ContractionOptions {
  std::vector<double> T_list{0.02, 0.04, 0.08};
  std::optional<double> R;  // defaults to 2 C0 ||phi||
  double s = 0.75;
  int pairs = 8;
  int steps = 32;  // trapezoid nodes per window
  FrequencyBox box{3.0, 3.0};
  std::uint64_t seed = 1;
};

struct ContractionPoint {
  double T = 0.0;
  double lipschitz = 0.0;
};

struct ContractionReport {
  std::vector<ContractionPoint> points;
  std::vector<double> halving_ratios;  // L(T_{k}) / L(T_{k+1}) for sorted T
  double R = 0.0;
  double C0 = 0.0;
  double C = 0.0;
  double threshold = 0.0;  // (2 C R^2)^{-4/3}
  double lipschitz_at_half_threshold = 0.0;
  double fitted_exponent = 0.0;
  bool contraction_below_threshold = false;
};

ContractionReport contraction_diagnostic(const Field& phi, const ModelParams& params,
                                         const ContractionOptions& opts);

}  // namespace ninls

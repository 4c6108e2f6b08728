#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ninls/propagator.hpp"
#include "ninls/report.hpp"
#include "ninls/spectral.hpp"

namespace ninls {

// ---- ensembles ----------------------------------------------------------

enum class EnsembleFamily { gaussian, single_mode, sech_packet };
const char* to_string(EnsembleFamily f);

struct EnsembleMember {
  EnsembleFamily family;
  std::string label;
  std::uint64_t seed;
  Field data;  // spectral, unit L^2 norm
};

struct EnsembleSpec {
  int gaussian = 60;
  int single_modes = 20;
  int packets = 20;
  FrequencyBox box{3.0, 2.0};
  // Packet inverse widths are drawn from [kappa_min, kappa_max].
  double kappa_min = 1.0;
  double kappa_max = 1.5;
  // Project packets onto the box (needed when the probe relies on band limits).
  bool packets_in_box = false;
  std::uint64_t seed = 1;

  int size() const { return gaussian + single_modes + packets; }
};

// Gaussian members use random_band_limited; single modes are off-axis lattice
// points of the box; packets are modulated sech profiles along the line
// direction (the y direction on the torus). Member k uses seed + k.
std::vector<EnsembleMember> make_ensemble(GridPtr grid, const EnsembleSpec& spec);

// ---- space-time quadrature ---------------------------------------------

struct TimeQuadrature {
  int samples_per_unit = 64;  // initial density
  double rel_tol = 1e-3;      // stop when the norm changes less than this
  int max_samples = 1 << 16;
};

struct TimeIntegral {
  double value = 0.0;  // (int_0^T F)^{1/p}
  int samples = 0;
  bool converged = false;
};

// Trapezoid for (int_0^T F(t) dt)^{1/p}, doubling the sample count (reusing
// old nodes) until the p-th root moves by less than rel_tol.
TimeIntegral adaptive_time_norm(const std::function<double(double)>& F, double T, double p,
                                const TimeQuadrature& quad);

// Evaluates S(t) f on the grid using only the nonzero coefficients of f.
class FlowSampler {
 public:
  FlowSampler(const Field& f, const ModelParams& params);
  // Optional Fourier weights applied before evaluation (e.g. D^s).
  FlowSampler(const Field& f, const ModelParams& params,
              const std::function<double(double, double)>& weight);

  void values(double t, std::vector<cplx>& out) const;
  const FourierGrid& grid() const { return *grid_; }

 private:
  GridPtr grid_;
  std::vector<std::size_t> idx_;
  std::vector<double> sigma_;
  std::vector<cplx> coef_;
};

// ||S(t) phi||_{L^p([0,T] x D)}
TimeIntegral spacetime_lp_linear(const Field& phi, const ModelParams& params, double T, double p,
                                 const TimeQuadrature& quad);

// ---- Strichartz probes on TxR -------------------------------------------

struct ProbeSetup {
  DomainSpec domain = DomainSpec::cylinder_txr(16, 256, 16.0 * kPi);
  EnsembleSpec ensemble;
  double T = 1.0;
  TimeQuadrature quad;
  // Rerun on the grid with nx, ny doubled and twice the initial time density.
  bool check_refinement = true;
};

double strichartz_ratio(const Field& phi, const ModelParams& params, double T,
                        const TimeQuadrature& quad);

ProbeReport strichartz_ratio_txr(const ModelParams& params, const ProbeSetup& setup);

// f(t') = sum_r e^{-i lambda_r t'} [S(t') if follows_flow] g_r
struct ForcingTerm {
  Field g;  // spectral
  double lambda = 0.0;
  bool follows_flow = false;
};
using ForcingSpec = std::vector<ForcingTerm>;

// int_0^t S(t - t') f(t') dt' in closed form per mode; returned spectral.
Field duhamel_closed_form(const ForcingSpec& f, const ModelParams& params, double t);

// ||Duhamel f||_{L^4([0,T] x D)} / ||f||_{L^{4/3}([0,T] x D)}
double duhamel_ratio(const ForcingSpec& f, const ModelParams& params, double T,
                     const TimeQuadrature& quad);

ForcingSpec forcing_for_member(const std::vector<EnsembleMember>& members, std::size_t k,
                               double lambda_max, std::uint64_t seed);
// Forcing members built from the ensemble data with random lambda in
// [-lambda_max, lambda_max]; every third member follows the flow.
std::vector<ForcingSpec> make_forcing_ensemble(const std::vector<EnsembleMember>& members,
                                               double lambda_max, std::uint64_t seed);

ProbeReport strichartz_ratio_duhamel_txr(const ModelParams& params, const ProbeSetup& setup,
                                         double lambda_max = 20.0);

// ---- mixed-norm probe on RxT ---------------------------------------------

// ||S(t) f||_{L^q_T L^p_x H^s_y} / ||f||_{H^{0,s}}
double mixed_norm_ratio(const Field& f, const ModelParams& params, double T, double q, double p,
                        double s, const TimeQuadrature& quad);

ProbeReport mixed_norm_strichartz_rxt(const ModelParams& params, const ProbeSetup& setup,
                                      double q = 12.0, double p = 6.0, double s = 0.6);

// ---- decoupling probe on the torus --------------------------------------

// Smallest torus grid that integrates |u|^4 exactly for data in the N box.
DomainSpec decoupling_domain(int N);

struct DecouplingOptions {
  std::vector<int> N_list{4, 8, 16, 32, 64};
  double alpha = -1.0;
  EnsembleSpec ensemble{40, 10, 10, {1.0, 1.0}, 1.0, 1.5, true, 1};  // box set per N
  double T = 1.0;
  TimeQuadrature quad;
  double derivative_exponent = -0.125 + 0.01;
};

// Returns the raw L^4/L^2 report; the D-normalized maxima and slope go into params.
ProbeReport decoupling_growth_probe(const DecouplingOptions& opts);

// ---- curvature of the surface (v, w, -alpha v^4 + w^2) -------------------

struct SurfacePoint {
  double v = 0.0;
  double w = 0.0;
  double alpha = -1.0;
  void validate() const;
};

struct SecondForm {
  double e, f, g, gauss_curvature;
};

struct FirstForm {
  double E, F, G;
};

// Closed-form coefficients.
SecondForm second_fundamental_form(const SurfacePoint& p);
// From the parametrization: tangent vectors, unit normal, second derivatives.
FirstForm first_fundamental_form(const SurfacePoint& p);
SecondForm second_fundamental_form_from_parametrization(const SurfacePoint& p);

struct CurvatureRow {
  SurfacePoint point;
  SecondForm closed;
  double gauss_parametrized;
};

ProbeReport curvature_check(const std::vector<double>& alphas, int grid_points,
                            std::vector<CurvatureRow>* rows = nullptr);

}  // namespace ninls

#pragma once

#include <limits>

#include "ninls/spectral.hpp"
#include "ninls/trajectory.hpp"

namespace ninls {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class SobolevKind { isotropic_bracket_sum, anisotropic, homogeneous };

// What a homogeneous weight does at k = 0. Required when s < 0.
enum class ZeroModeRule { unspecified, annihilate, keep };

struct SobolevIndex {
  SobolevKind kind = SobolevKind::isotropic_bracket_sum;
  double s = 0.0;
  double s1 = 0.0, s2 = 0.0;
  ZeroModeRule zero_mode = ZeroModeRule::unspecified;

  // weight (1 + |k1| + |k2|)^{2s}
  static SobolevIndex bracket_sum(double s);
  // weight (1 + k1^2)^{s1} (1 + k2^2)^{s2}
  static SobolevIndex anisotropic(double s1, double s2);
  // weight (k1^2 + k2^2)^s
  static SobolevIndex homogeneous(double s, ZeroModeRule rule = ZeroModeRule::unspecified);

  void validate() const;
  double weight(double k1, double k2) const;
};

struct AdmissiblePair {
  double q = 8.0;
  double p = kInf;
};

// 1/p + 4/q = 1/2 to 1e-12, with 1/inf = 0.
bool is_admissible(double q, double p);

double lp_norm(const Field& f, double p);
double sobolev_norm(const Field& f, const SobolevIndex& idx);
// Weighted inner product area * sum w conj(f) g.
cplx sobolev_inner(const Field& f, const Field& g, const SobolevIndex& idx);

// Multiplier (k1^2 + k2^2)^{s/2}; the zero mode is annihilated unless s == 0.
Field fractional_derivative(const Field& f, double s);

// L^p in x of the per-row H^ell_y norm of one snapshot. Each row norm is
// period_y * sum_n (1 + n^2)^ell |c_n|^2 over its y-coefficients.
double lp_x_hs_y(const Field& f, double p, double ell);

// Trapezoid in time of lp_x_hs_y^q over uniformly spaced snapshots;
// q = inf takes the max over snapshots.
double mixed_norm(const Trajectory& traj, double q, double p, double ell);

}  // namespace ninls

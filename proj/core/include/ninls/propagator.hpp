#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ninls/spectral.hpp"

namespace ninls {

// Coefficient support |k1| <= x_halfwidth, |k2| <= y_halfwidth.
struct FrequencyBox {
  double x_halfwidth = 1.0;
  double y_halfwidth = 1.0;

  // [-sqrt(N/2), sqrt(N/2)] x [-N, N]
  static FrequencyBox decoupling(int N);

  void validate() const;
  bool contains(double k1, double k2) const;
  // Throws ConfigError if some frequency inside the box is missing from the grid.
  void require_fits(const FourierGrid& g) const;
};

// e^{-it sigma(k)} with sigma(k) = omega(k1) + k2^2, tabulated on a grid.
class LinearGroup {
 public:
  LinearGroup(GridPtr grid, const ModelParams& params);

  const std::vector<double>& symbol() const { return sigma_; }
  const GridPtr& grid_ptr() const { return grid_; }

  // Same representation as the input.
  Field apply(const Field& f, double t) const;
  // In place on a coefficient array.
  void apply_coefficients(std::vector<cplx>& c, double t) const;

 private:
  GridPtr grid_;
  std::vector<double> sigma_;
};

Field propagate_linear(const Field& f, const ModelParams& params, double t);

using Forcing = std::function<Field(double)>;

// Composite trapezoid for int_0^t S(t - t') F(t') dt' with the group applied
// exactly at each node. Result is spectral.
Field duhamel_integral(const Forcing& forcing, const ModelParams& params, double t, int steps);

// Unit-L^2 field with independent standard complex Gaussian coefficients on
// the box (drawn in sorted mode order so the draw does not depend on the
// grid resolution), zero elsewhere. Returned spectral.
Field random_band_limited(GridPtr grid, const FrequencyBox& box, std::uint64_t seed);

}  // namespace ninls

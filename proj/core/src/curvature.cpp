#include <array>
#include <cmath>
#include <sstream>

#include "ninls/error.hpp"
#include "ninls/probes.hpp"

namespace ninls {
namespace {

using Vec3 = std::array<double, 3>;

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

struct Derivatives {
  Vec3 pv, pw, pvv, pvw, pww;
};

// phi(v, w) = (v, w, -alpha v^4 + w^2)
Derivatives derivatives(const SurfacePoint& p) {
  const double a = p.alpha, v = p.v, w = p.w;
  return {{1.0, 0.0, -4.0 * a * v * v * v},
          {0.0, 1.0, 2.0 * w},
          {0.0, 0.0, -12.0 * a * v * v},
          {0.0, 0.0, 0.0},
          {0.0, 0.0, 2.0}};
}

}  // namespace

void SurfacePoint::validate() const {
  if (!(alpha < 0.0)) throw ConfigError("the surface is defined for alpha < 0");
  if (!(std::abs(v) <= 1.0) || !(std::abs(w) <= 1.0))
    throw ConfigError("surface points need |v| <= 1 and |w| <= 1");
}

SecondForm second_fundamental_form(const SurfacePoint& p) {
  p.validate();
  const double a = p.alpha, v = p.v, w = p.w;
  const double D = 16.0 * a * a * v * v * v * v * v * v + 4.0 * w * w + 1.0;
  const double r = std::sqrt(D);
  // e g = -24 alpha v^2 / D and E G - F^2 = D.
  return {-12.0 * a * v * v / r, 0.0, 2.0 / r, -24.0 * a * v * v / (D * D)};
}

FirstForm first_fundamental_form(const SurfacePoint& p) {
  p.validate();
  const auto d = derivatives(p);
  return {dot(d.pv, d.pv), dot(d.pv, d.pw), dot(d.pw, d.pw)};
}

SecondForm second_fundamental_form_from_parametrization(const SurfacePoint& p) {
  p.validate();
  const auto d = derivatives(p);
  Vec3 n = cross(d.pv, d.pw);
  const double len = std::sqrt(dot(n, n));
  for (auto& c : n) c /= len;
  const double e = dot(d.pvv, n), f = dot(d.pvw, n), g = dot(d.pww, n);
  const auto I = first_fundamental_form(p);
  return {e, f, g, (e * g - f * f) / (I.E * I.G - I.F * I.F)};
}

ProbeReport curvature_check(const std::vector<double>& alphas, int grid_points,
                            std::vector<CurvatureRow>* rows) {
  if (alphas.empty()) throw ConfigError("curvature check needs at least one alpha");
  if (grid_points < 2) throw ConfigError("curvature check needs grid_points >= 2");
  ProbeReport rep;
  rep.probe_name = "curvature_S_alpha";
  rep.set("grid_points", static_cast<std::int64_t>(grid_points));
  bool f_zero = true, g_pos = true, e_sign = true;
  double worst = 0.0;
  for (double alpha : alphas) {
    double worst_alpha = 0.0;
    for (int i = 0; i < grid_points; ++i) {
      const double v = -1.0 + 2.0 * i / (grid_points - 1);
      for (int j = 0; j < grid_points; ++j) {
        const double w = -1.0 + 2.0 * j / (grid_points - 1);
        const SurfacePoint p{v, w, alpha};
        const auto c = second_fundamental_form(p);
        const auto q = second_fundamental_form_from_parametrization(p);
        if (c.f != 0.0 || q.f != 0.0) f_zero = false;
        if (!(c.g > 0.0)) g_pos = false;
        if (!(c.e >= 0.0) || ((c.e > 0.0) != (v != 0.0))) e_sign = false;
        const double diff =
            std::abs(c.gauss_curvature - q.gauss_curvature) / std::max(1.0, std::abs(c.gauss_curvature));
        worst_alpha = std::max(worst_alpha, diff);
        if (rows) rows->push_back({p, c, q.gauss_curvature});
      }
    }
    std::ostringstream os;
    os << "alpha=" << format_double(alpha);
    rep.add(os.str(), worst_alpha);
    worst = std::max(worst, worst_alpha);
  }
  rep.set("f_exactly_zero", f_zero);
  rep.set("g_positive", g_pos);
  rep.set("e_nonnegative_and_positive_iff_v_nonzero", e_sign);
  rep.set("max_gauss_path_discrepancy", worst);
  rep.tolerance_met = f_zero && g_pos && e_sign && worst <= 1e-12;
  return rep;
}

}  // namespace ninls

#include <cmath>
#include <random>
#include <sstream>

#include "ninls/error.hpp"
#include "ninls/norms.hpp"
#include "ninls/probes.hpp"

namespace ninls {
namespace {

// Integer mode labels m with |freq(m)| inside the half-width, in sorted order.
std::vector<int> box_modes(int n, double period, bool periodic, double halfwidth) {
  std::vector<int> out;
  const double dk = periodic ? 1.0 : kTwoPi / period;
  for (int m = -n / 2 + 1; m < n / 2; ++m)
    if (std::abs(m * dk) <= halfwidth * (1 + 1e-12)) out.push_back(m);
  return out;
}

Field normalized(const Field& f) {
  const double n = lp_norm(f, 2.0);
  if (!(n > 0.0)) throw ConfigError("ensemble member has zero norm");
  return f.to_spectral() * (1.0 / n);
}

Field project_to_box(const Field& f, const FrequencyBox& box) {
  return apply_multiplier(f.to_spectral(), [&](double k1, double k2) -> cplx {
    return box.contains(k1, k2) ? 1.0 : 0.0;
  });
}

}  // namespace

const char* to_string(EnsembleFamily f) {
  switch (f) {
    case EnsembleFamily::gaussian:
      return "gaussian";
    case EnsembleFamily::single_mode:
      return "single_mode";
    case EnsembleFamily::sech_packet:
      return "sech_packet";
  }
  return "?";
}

std::vector<EnsembleMember> make_ensemble(GridPtr grid, const EnsembleSpec& spec) {
  const auto& g = *grid;
  spec.box.require_fits(g);
  if (spec.gaussian < 0 || spec.single_modes < 0 || spec.packets < 0)
    throw ConfigError("ensemble counts must be nonnegative");
  if (!(spec.kappa_min > 0.0) || !(spec.kappa_max >= spec.kappa_min))
    throw ConfigError("packet widths need 0 < kappa_min <= kappa_max");
  const auto& ds = g.spec();
  const auto mx = box_modes(g.nx(), ds.period_x, ds.x_periodic(), spec.box.x_halfwidth);
  const auto my = box_modes(g.ny(), ds.period_y, ds.y_periodic(), spec.box.y_halfwidth);

  std::vector<EnsembleMember> out;
  std::uint64_t k = 0;
  for (int r = 0; r < spec.gaussian; ++r, ++k) {
    const auto seed = spec.seed + k;
    std::ostringstream os;
    os << "gaussian#" << r;
    out.push_back({EnsembleFamily::gaussian, os.str(), seed,
                   random_band_limited(grid, spec.box, seed)});
  }

  std::vector<std::pair<int, int>> off_axis;
  for (int a : mx)
    for (int b : my)
      if (a != 0 && b != 0) off_axis.emplace_back(a, b);
  if (off_axis.empty())
    for (int a : mx)
      for (int b : my) off_axis.emplace_back(a, b);
  for (int r = 0; r < spec.single_modes; ++r, ++k) {
    const auto seed = spec.seed + k;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, off_axis.size() - 1);
    const auto [a, b] = off_axis[pick(rng)];
    std::vector<cplx> c(g.size());
    c[g.index(g.mode_index_x(a), g.mode_index_y(b))] = 1.0 / std::sqrt(g.area());
    std::ostringstream os;
    os << "mode(" << a << "," << b << ")";
    out.push_back({EnsembleFamily::single_mode, os.str(), seed,
                   Field(grid, std::move(c), Representation::spectral)});
  }

  // The sech profile lives along the line direction (y on the torus); the
  // other direction carries an integer modulation from the box.
  const bool along_x = ds.geometry == Geometry::RxT;
  const auto& carrier = along_x ? my : mx;
  const double line_len = along_x ? ds.period_x : ds.period_y;
  const bool line_periodic = along_x ? ds.x_periodic() : ds.y_periodic();
  const double line_half = along_x ? spec.box.x_halfwidth : spec.box.y_halfwidth;
  for (int r = 0; r < spec.packets; ++r, ++k) {
    const auto seed = spec.seed + k;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double kappa = spec.kappa_min + (spec.kappa_max - spec.kappa_min) * unit(rng);
    const double center = line_periodic ? kPi + (unit(rng) - 0.5) * 0.5 * kPi
                                        : (unit(rng) - 0.5) * 0.25 * line_len;
    double xi0 = (unit(rng) - 0.5) * line_half;
    if (line_periodic) xi0 = std::round(xi0);
    const int m = carrier[std::uniform_int_distribution<std::size_t>(0, carrier.size() - 1)(rng)];
    Field f = Field::sample(grid, [&](double x, double y) {
      const double line = along_x ? x : y;
      const double other = along_x ? y : x;
      return std::polar(1.0, m * other + xi0 * (line - center)) / std::cosh(kappa * (line - center));
    });
    if (spec.packets_in_box) f = project_to_box(f, spec.box);
    std::ostringstream os;
    os << "packet(m=" << m << ",kappa=" << format_double(kappa) << ")";
    out.push_back({EnsembleFamily::sech_packet, os.str(), seed, normalized(f)});
  }
  return out;
}

}  // namespace ninls

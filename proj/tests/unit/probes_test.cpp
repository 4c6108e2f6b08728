#include <gtest/gtest.h>

#include <cmath>

#include "gen.hpp"
#include "ninls/error.hpp"
#include "ninls/norms.hpp"
#include "ninls/probes.hpp"

using namespace ninls;
using ninls::testing::Gen;

namespace {

TimeQuadrature tight() {
  TimeQuadrature q;
  q.samples_per_unit = 64;
  q.rel_tol = 1e-10;
  q.max_samples = 1 << 18;
  return q;
}

double constant_modulus_ratio(const FourierGrid& g, double T) {
  return std::pow(T * g.area(), 0.25) / std::sqrt(g.area());
}

}  // namespace

TEST(AdaptiveTimeNorm, Polynomial) {
  const auto r = adaptive_time_norm([](double t) { return t * t; }, 2.0, 1.0, tight());
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 8.0 / 3.0, 1e-9);
  const auto c = adaptive_time_norm([](double) { return 16.0; }, 1.0, 4.0, tight());
  EXPECT_NEAR(c.value, 2.0, 1e-15);
}

TEST(StrichartzRatio, ConstantAndPureMode) {
  const auto g = FourierGrid::make(DomainSpec::cylinder_txr(16, 64, 8 * kPi));
  const ModelParams m{1, -1.0};
  for (double T : {0.5, 1.0, 3.0}) {
    const Field c = Field::sample(g, [](double, double) { return cplx(0.3, 0.4); });
    EXPECT_NEAR(strichartz_ratio(c, m, T, tight()), constant_modulus_ratio(*g, T), 1e-12);
    const double k2 = 3 * kTwoPi / (8 * kPi);
    const Field p = Field::from_coefficients(
        g, [&](double a, double b) { return (a == 2.0 && std::abs(b - k2) < 1e-12) ? 1.0 : 0.0; });
    EXPECT_NEAR(strichartz_ratio(p, m, T, tight()), constant_modulus_ratio(*g, T), 1e-12);
  }
  EXPECT_TRUE(std::isnan(strichartz_ratio(Field::zeros(g), m, 1.0, tight())));
}

TEST(StrichartzRatio, ScaleAndTranslationInvariant) {
  Gen gen(601);
  const auto g = FourierGrid::make(DomainSpec::cylinder_txr(16, 64, 8 * kPi));
  const ModelParams m{1, -1.0};
  TimeQuadrature q;
  q.rel_tol = 1e-6;
  for (int trial = 0; trial < 5; ++trial) {
    const Field f = random_band_limited(g, FrequencyBox{3, 2}, gen.seed());
    const double r = strichartz_ratio(f, m, 1.0, q);
    EXPECT_NEAR(strichartz_ratio(f * cplx(0.0, 7.5), m, 1.0, q), r, 1e-12 * r);
    const int shift = static_cast<int>(gen.integer(1, 15));
    const double a = shift * g->dx();
    const Field moved = apply_multiplier(f, [&](double k1, double) { return std::polar(1.0, -k1 * a); });
    EXPECT_NEAR(strichartz_ratio(moved, m, 1.0, q), r, 1e-9 * r);
  }
}

TEST(StrichartzProbe, Validation) {
  ProbeSetup s;
  EXPECT_THROW(strichartz_ratio_txr({1, 1.0}, s), ConfigError);
  s.domain = DomainSpec::torus(16, 16);
  EXPECT_THROW(strichartz_ratio_txr({1, -1.0}, s), ConfigError);
  EXPECT_THROW(strichartz_ratio_duhamel_txr({1, -1.0}, s), ConfigError);
}

TEST(StrichartzProbe, SmallEnsembleIsStable) {
  ProbeSetup s;
  s.domain = DomainSpec::cylinder_txr(16, 128, 16 * kPi);
  s.ensemble = EnsembleSpec{4, 2, 2, {3.0, 2.0}, 1.0, 1.5, false, 5};
  const auto r = strichartz_ratio_txr({1, -1.0}, s);
  EXPECT_EQ(r.measured.size(), 8u);
  EXPECT_GT(r.max_ratio, 0.0);
  EXPECT_TRUE(r.tolerance_met);
  EXPECT_EQ(r.to_json(), strichartz_ratio_txr({1, -1.0}, s).to_json());
}

TEST(Duhamel, ClosedFormAgainstTrapezoid) {
  Gen gen(602);
  const auto g = FourierGrid::make(DomainSpec::cylinder_txr(16, 64, 8 * kPi));
  const ModelParams m{1, -0.5};
  const Field g1 = random_band_limited(g, FrequencyBox{3, 2}, 3);
  const Field g2 = random_band_limited(g, FrequencyBox{2, 2}, 4);
  const ForcingSpec f{{g1, 2.5, false}, {g2, -1.0, true}};
  const LinearGroup group(g, m);
  const Forcing direct = [&](double t) {
    return g1 * std::polar(1.0, -2.5 * t) + group.apply(g2, t) * std::polar(1.0, 1.0 * t);
  };
  const double t = 0.6;
  const Field closed = duhamel_closed_form(f, m, t);
  const Field trap = duhamel_integral(direct, m, t, 4000);
  EXPECT_LE(lp_norm(closed - trap, 2.0), 5e-5 * lp_norm(closed, 2.0));
  EXPECT_THROW(duhamel_closed_form({}, m, t), ConfigError);
}

TEST(Duhamel, ForcingAlongTheFlow) {
  const auto g = FourierGrid::make(DomainSpec::cylinder_txr(16, 64, 8 * kPi));
  const ModelParams m{1, -1.0};
  const Field c = Field::from_coefficients(g, [](double a, double b) { return (a == 1.0 && b == 0.0) ? 0.5 : 0.0; });
  const double t = 0.8;
  const Field out = duhamel_closed_form({{c, 0.0, true}}, m, t);
  EXPECT_LE(lp_norm(out - propagate_linear(c, m, t) * t, 2.0), 1e-14);

  // |output| = t |c| and |forcing| = |c| in closed form.
  const double T = 1.3, A = g->area();
  const double want = std::pow(A * std::pow(T, 5) / 5.0, 0.25) / std::pow(A * T, 0.75);
  EXPECT_NEAR(duhamel_ratio({{c, 0.0, true}}, m, T, tight()), want, 1e-7 * want);
  EXPECT_TRUE(std::isnan(duhamel_ratio({{Field::zeros(g), 0.0, false}}, m, T, tight())));
}

TEST(MixedNorm, SingleYModeReducesToOneDimension) {
  const double L = 16 * kPi;
  const auto g = FourierGrid::make(DomainSpec::cylinder_rxt(64, 8, L));
  const ModelParams m{1, -1.0};
  const double dk = kTwoPi / L;
  const std::vector<std::pair<int, cplx>> modes{{-3, cplx(0.5, 0.1)}, {1, cplx(1.0, 0.0)}, {4, cplx(-0.2, 0.7)}};
  const double T = 0.5, q = 12.0, p = 6.0;
  double oracle_1d = 0.0;
  {
    // Direct evaluation of the 1-D flow in x, fixed fine trapezoid in t.
    const int nt = 4000;
    std::vector<double> Ft(nt + 1);
    for (int k = 0; k <= nt; ++k) {
      const double t = T * k / nt;
      double acc = 0.0;
      for (double x : g->points_x()) {
        cplx u = 0.0;
        for (const auto& [j, a] : modes) {
          const double kx = j * dk;
          u += a * std::polar(1.0, kx * x - full_symbol(m, kx, 0.0) * t);
        }
        acc += std::pow(std::abs(u), p);
      }
      Ft[k] = std::pow(acc * g->dx(), q / p);
    }
    double integral = 0.0;
    for (int k = 0; k < nt; ++k) integral += 0.5 * (Ft[k] + Ft[k + 1]) * T / nt;
    double l2 = 0.0;
    for (const auto& [j, a] : modes) l2 += std::norm(a);
    oracle_1d = std::pow(integral, 1.0 / q) / std::sqrt(l2 * L);
  }
  for (int my : {0, 2})
    for (double s : {0.0, 0.6}) {
      const Field f = Field::from_coefficients(g, [&](double k1, double k2) -> cplx {
        if (k2 != my) return 0.0;
        for (const auto& [j, a] : modes)
          if (std::abs(k1 - j * dk) < 1e-12) return a;
        return 0.0;
      });
      EXPECT_NEAR(mixed_norm_ratio(f, m, T, q, p, s, tight()), oracle_1d, 1e-6 * oracle_1d) << my << " " << s;
    }
}

TEST(MixedNorm, ConstantInX) {
  const double L = 8 * kPi;
  const auto g = FourierGrid::make(DomainSpec::cylinder_rxt(32, 8, L));
  const Field f = Field::sample(g, [](double, double y) { return std::polar(2.0, 3.0 * y); });
  for (double s : {0.0, 0.6}) {
    const double want = std::pow(0.7, 1.0 / 12.0) * std::pow(L, 1.0 / 6.0 - 0.5);
    EXPECT_NEAR(mixed_norm_ratio(f, {1, -1.0}, 0.7, 12.0, 6.0, s, tight()), want, 1e-12);
  }
  EXPECT_THROW(mixed_norm_ratio(f, {1, -1.0}, 1.0, 12.0, 4.0, 0.6, tight()), ConfigError);
}

TEST(MixedNorm, ProbeNeedsRxT) {
  ProbeSetup s;
  EXPECT_THROW(mixed_norm_strichartz_rxt({1, -1.0}, s), ConfigError);
  s.domain = DomainSpec::cylinder_rxt(128, 16, 16 * kPi);
  EXPECT_THROW(mixed_norm_strichartz_rxt({1, -1.0}, s, 12.0, 5.0), ConfigError);
}

TEST(Ensemble, Properties) {
  const auto g = FourierGrid::make(DomainSpec::cylinder_txr(16, 128, 16 * kPi));
  EnsembleSpec spec{5, 4, 3, {3.0, 2.0}, 1.0, 1.5, false, 11};
  const auto a = make_ensemble(g, spec);
  const auto b = make_ensemble(g, spec);
  ASSERT_EQ(a.size(), 12u);
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].seed, spec.seed + k);
    EXPECT_EQ(a[k].label, b[k].label);
    EXPECT_NEAR(lp_norm(a[k].data, 2.0), 1.0, 1e-12);
    EXPECT_EQ(lp_norm(a[k].data - b[k].data, kInf), 0.0);
    if (a[k].family == EnsembleFamily::sech_packet) continue;
    const Field c = a[k].data.to_spectral();
    for (int i = 0; i < g->nx(); ++i)
      for (int j = 0; j < g->ny(); ++j)
        if (!spec.box.contains(g->freqs_x()[i], g->freqs_y()[j]))
          EXPECT_EQ(c.data()[g->index(i, j)], cplx(0.0));
  }
  EXPECT_EQ(a[5].family, EnsembleFamily::single_mode);
  EXPECT_EQ(a[11].family, EnsembleFamily::sech_packet);
  spec.kappa_min = 0.0;
  EXPECT_THROW(make_ensemble(g, spec), ConfigError);
}

TEST(Ensemble, PacketsProjectedIntoTheBox) {
  const auto g = decoupling_domain(8);
  const auto grid = FourierGrid::make(g);
  EnsembleSpec spec{0, 0, 4, FrequencyBox::decoupling(8), 1.0, 1.5, true, 3};
  for (const auto& m : make_ensemble(grid, spec)) {
    const Field c = m.data.to_spectral();
    for (int i = 0; i < grid->nx(); ++i)
      for (int j = 0; j < grid->ny(); ++j)
        if (!spec.box.contains(grid->freqs_x()[i], grid->freqs_y()[j]))
          EXPECT_EQ(c.data()[grid->index(i, j)], cplx(0.0));
  }
}

TEST(Decoupling, DomainAndSingleModeClosedForm) {
  const auto d1 = decoupling_domain(1);
  EXPECT_EQ(d1.geometry, Geometry::TxT);
  EXPECT_EQ(d1.nx, 8);
  EXPECT_EQ(d1.ny, 8);
  EXPECT_EQ(decoupling_domain(64).ny, 512);
  EXPECT_THROW(decoupling_domain(0), ConfigError);
  const auto g = FourierGrid::make(d1);
  const auto ms = make_ensemble(g, EnsembleSpec{0, 3, 0, FrequencyBox::decoupling(1), 1.0, 1.5, true, 2});
  for (const auto& m : ms)
    EXPECT_NEAR(strichartz_ratio(m.data, {0, -1.0}, 1.0, tight()), constant_modulus_ratio(*g, 1.0), 1e-12);
}

TEST(Decoupling, SmallProbe) {
  DecouplingOptions o;
  o.N_list = {2, 4};
  o.ensemble = EnsembleSpec{3, 2, 2, {1.0, 1.0}, 1.0, 1.5, true, 4};
  const auto r = decoupling_growth_probe(o);
  EXPECT_EQ(r.measured.size(), 2u);
  ASSERT_TRUE(r.fitted_exponent.has_value());
  EXPECT_TRUE(r.params.count("D_max_N=4"));
  EXPECT_TRUE(r.params.count("D_slope"));
  o.N_list = {4, 4};
  EXPECT_THROW(decoupling_growth_probe(o), ConfigError);
  o.N_list = {2, 4};
  o.alpha = 1.0;
  EXPECT_THROW(decoupling_growth_probe(o), ConfigError);
}

TEST(Curvature, Examples) {
  const auto a = second_fundamental_form({1.0, 0.0, -1.0});
  EXPECT_NEAR(a.e, 12.0 / std::sqrt(17.0), 1e-14);
  EXPECT_EQ(a.f, 0.0);
  EXPECT_NEAR(a.g, 2.0 / std::sqrt(17.0), 1e-14);
  EXPECT_NEAR(a.gauss_curvature, 24.0 / 289.0, 1e-15);
  for (double w : {-1.0, 0.3}) {
    const auto b = second_fundamental_form({0.0, w, -2.0});
    EXPECT_EQ(b.e, 0.0);
    EXPECT_NEAR(b.g, 2.0 / std::sqrt(4 * w * w + 1), 1e-15);
    EXPECT_EQ(b.gauss_curvature, 0.0);
  }
  EXPECT_THROW(second_fundamental_form({0.0, 0.0, 1.0}), ConfigError);
  EXPECT_THROW(second_fundamental_form({1.5, 0.0, -1.0}), ConfigError);
}

TEST(Curvature, ClosedFormMatchesParametrization) {
  Gen gen(603);
  for (int trial = 0; trial < 500; ++trial) {
    const SurfacePoint p{gen.uniform(-1.0, 1.0), gen.uniform(-1.0, 1.0), -gen.log_uniform(0.1, 10.0)};
    const auto c = second_fundamental_form(p);
    const auto n = second_fundamental_form_from_parametrization(p);
    const auto I = first_fundamental_form(p);
    const double D = 16 * p.alpha * p.alpha * std::pow(p.v, 6) + 4 * p.w * p.w + 1;
    EXPECT_NEAR(I.E * I.G - I.F * I.F, D, 1e-12 * D);
    EXPECT_NEAR(n.e, c.e, 1e-12 * (1 + std::abs(c.e)));
    EXPECT_NEAR(n.g, c.g, 1e-12);
    EXPECT_NEAR(n.gauss_curvature, c.gauss_curvature, 1e-12 * (1 + std::abs(c.gauss_curvature)));
    EXPECT_GT(c.e * c.g - c.f * c.f, 0.0);
  }
}

TEST(Curvature, CheckReport) {
  std::vector<CurvatureRow> rows;
  const auto r = curvature_check({-1.0, -0.25}, 11, &rows);
  EXPECT_EQ(rows.size(), 2u * 11 * 11);
  EXPECT_TRUE(r.tolerance_met);
  EXPECT_THROW(curvature_check({}, 11), ConfigError);
  EXPECT_THROW(curvature_check({-1.0}, 1), ConfigError);
}

#include <gtest/gtest.h>

#include <cmath>

#include "gen.hpp"
#include "ninls/error.hpp"
#include "ninls/exact.hpp"
#include "ninls/norms.hpp"
#include "ninls/solver.hpp"

using namespace ninls;
using ninls::testing::Gen;

namespace {

double rel_l2(const Field& a, const Field& b) {
  return lp_norm(a.to_physical() - b.to_physical(), 2.0) / lp_norm(b, 2.0);
}

// u = A e^{inx} sech(b y) with A = sqrt(2 sigma), b = sqrt(sigma), by the
// sech integrals int sech^2 = 2, int sech^2 tanh^2 = 2/3, int sech^4 = 4/3.
struct SechIntegrals {
  double quad_x, grad_y, quartic;
};

SechIntegrals sech_integrals(double sigma) {
  const double A2 = 2.0 * sigma, b = std::sqrt(sigma);
  return {kTwoPi * A2 * 2.0 / b, kTwoPi * A2 * b * b * (2.0 / 3.0) / b,
          kTwoPi * A2 * A2 * (4.0 / 3.0) / b};
}

}  // namespace

TEST(Mass, Examples) {
  const auto t2 = FourierGrid::make(DomainSpec::torus(8, 8));
  const cplx c(1.0, 2.0);
  EXPECT_NEAR(mass(Field::sample(t2, [&](double, double) { return c; })), 4 * kPi * kPi * 5.0, 1e-11);
  const auto g = FourierGrid::make(DomainSpec::cylinder_txr(8, 1024, 32 * kPi));
  for (long n : {0L, 1L}) {
    StandingWaveParams sw{n, 1.0, -1.0, 1};
    EXPECT_NEAR(mass(standing_wave(sw, 0.3, g)), 8 * kPi * std::sqrt(sw.sigma()), 1e-10);
  }
}

TEST(Energy, Examples) {
  const auto t2 = FourierGrid::make(DomainSpec::torus(8, 8));
  const ModelParams defoc{1, -1.0, Nonlinearity::defocusing};
  EXPECT_EQ(energy(Field::zeros(t2), defoc), 0.0);
  const cplx c(0.6, -0.8);
  const double r = std::abs(c);
  const Field e = Field::sample(t2, [&](double x, double) { return c * std::polar(1.0, x); });
  EXPECT_NEAR(energy(e, defoc), kPi * kPi * std::pow(r, 4), 1e-12);
}

TEST(Energy, StandingWaveAgainstSechIntegrals) {
  const auto g = FourierGrid::make(DomainSpec::cylinder_txr(8, 2048, 32 * kPi));
  for (long n : {0L, 1L, 2L}) {
    StandingWaveParams sw{n, 0.5, -0.5, 1};
    const ModelParams m = sw.model();
    const Field u = standing_wave(sw, 0.0, g);
    const auto I = sech_integrals(sw.sigma());
    const double nn = static_cast<double>(n);
    const double want_e = (nn * nn + m.alpha * nn * nn * nn * nn) * I.quad_x + I.grad_y -
                          0.25 * I.quartic;
    const double want_h = (nn * nn - m.alpha * nn * nn * nn * nn) * I.quad_x + I.grad_y -
                          0.5 * I.quartic;
    EXPECT_NEAR(energy(u, m), want_e, 1e-9 * std::abs(want_e) + 1e-9) << n;
    EXPECT_NEAR(hamiltonian(u, m), want_h, 1e-9 * std::abs(want_h) + 1e-9) << n;
  }
}

TEST(Energy, QuarticSignFollowsTheNonlinearity) {
  Gen gen(401);
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = FourierGrid::make(gen.domain());
    const Field f = gen.rough_field(g);
    const double foc = energy(f, {1, -1.0, Nonlinearity::focusing});
    const double def = energy(f, {1, -1.0, Nonlinearity::defocusing});
    double q = 0.0;
    for (const auto& z : f.data()) q += std::pow(std::norm(z), 2);
    q *= g->cell();
    EXPECT_NEAR(def - foc, 0.5 * q, 1e-10 * q);
    EXPECT_GE(def - foc, 0.0);
  }
}

TEST(Energy, UnweightedDiffersOnlyWhenEpsilonIsZero) {
  const auto g = FourierGrid::make(DomainSpec::torus(16, 16));
  const Field f = random_band_limited(g, FrequencyBox{3, 3}, 4);
  EXPECT_EQ(energy(f, {1, -1.0}), energy_unweighted(f, {1, -1.0}));
  EXPECT_GT(energy_unweighted(f, {0, -1.0}), energy(f, {0, -1.0}));
}

TEST(SolverConfig, Validation) {
  SolverConfig c;
  c.dt = 0.0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = SolverConfig{};
  c.dt = 1.0;
  c.t_final = 0.5;
  EXPECT_THROW(c.validate(), ConfigError);
  c = SolverConfig{};
  c.picard_tol = 0.0;
  EXPECT_THROW(c.validate(), ConfigError);
  EXPECT_EQ(parse_scheme("picard"), Scheme::picard);
  EXPECT_THROW(parse_scheme("rk4"), ConfigError);
}

TEST(Solve, ZeroDataStaysZero) {
  const auto g = FourierGrid::make(DomainSpec::torus(8, 8));
  for (auto scheme : {Scheme::split_step, Scheme::picard}) {
    SolverConfig c;
    c.scheme = scheme;
    c.dt = 0.01;
    c.t_final = 0.05;
    const auto tr = solve(Field::zeros(g), {1, -1.0}, c);
    ASSERT_EQ(tr.size(), 6u);
    for (const auto& s : tr.states) EXPECT_EQ(lp_norm(s, kInf), 0.0);
    EXPECT_NO_THROW(tr.validate());
  }
}

TEST(Solve, StandingWaveReproducesItself) {
  const auto g = FourierGrid::make(DomainSpec::cylinder_txr(8, 512, 32 * kPi));
  StandingWaveParams sw;
  SolverConfig c;
  c.dt = 1e-4;
  c.t_final = 0.02;
  c.save_every = 50;
  for (auto scheme : {Scheme::split_step, Scheme::picard}) {
    c.scheme = scheme;
    const auto tr = solve(standing_wave(sw, 0.0, g), sw.model(), c);
    EXPECT_EQ(tr.size(), 5u);
    EXPECT_LE(rel_l2(tr.states.back(), standing_wave(sw, c.t_final, g)), 1e-6) << to_string(scheme);
  }
}

TEST(Solve, SplitStepMassPerStep) {
  Gen gen(403);
  const auto g = FourierGrid::make(DomainSpec::cylinder_rxt(64, 16, 16 * kPi));
  const Field phi = random_band_limited(g, FrequencyBox{2, 3}, 8) * 2.0;
  SolverConfig c;
  c.dt = 1e-3;
  c.t_final = 0.05;
  // Dealiasing removes the modes the cubic term pushes past 2/3 of Nyquist,
  // which is a genuine mass loss; without it each substep is unitary.
  c.dealias = false;
  const auto tr = solve(phi, {1, -1.0, Nonlinearity::defocusing}, c);
  for (std::size_t k = 1; k < tr.size(); ++k)
    EXPECT_LE(std::abs(tr.mass_ledger[k] / tr.mass_ledger[k - 1] - 1.0), 1e-12);
}

TEST(Solve, HamiltonianIsConserved) {
  const auto g = FourierGrid::make(DomainSpec::torus(32, 32));
  for (auto sign : {Nonlinearity::focusing, Nonlinearity::defocusing})
    for (auto scheme : {Scheme::split_step, Scheme::picard}) {
      SolverConfig c;
      c.scheme = scheme;
      c.dt = 1e-4;
      c.t_final = 0.02;
      const auto tr = solve(random_band_limited(g, FrequencyBox{3, 3}, 12) * 0.5, {1, -1.0, sign}, c);
      const double h0 = tr.hamiltonian_ledger.front();
      for (double h : tr.hamiltonian_ledger) EXPECT_LE(std::abs(h / h0 - 1.0), 1e-9);
    }
}

TEST(Solve, SchemesAgreeOnSmallData) {
  Gen gen(404);
  for (int trial = 0; trial < 3; ++trial) {
    const auto g = FourierGrid::make(DomainSpec::cylinder_txr(16, 64, 16 * kPi));
    const Field phi = random_band_limited(g, FrequencyBox{3, 2}, gen.seed()) * 0.1;
    const ModelParams m{1, -gen.uniform(0.5, 2.0),
                        trial % 2 ? Nonlinearity::focusing : Nonlinearity::defocusing};
    SolverConfig c;
    c.dt = 1e-4;
    c.t_final = 0.01;
    c.save_every = 100;
    const auto a = solve(phi, m, c);
    c.scheme = Scheme::picard;
    const auto b = solve(phi, m, c);
    EXPECT_LE(rel_l2(b.states.back(), a.states.back()), 1e-5);
  }
}

TEST(Picard, IteratesContractGeometrically) {
  const auto g = FourierGrid::make(DomainSpec::torus(16, 16));
  SolverConfig c;
  c.scheme = Scheme::picard;
  c.dt = 1e-3;
  c.t_final = 0.05;
  PicardStats st;
  solve(random_band_limited(g, FrequencyBox{3, 3}, 2) * 2.0, {1, -1.0}, c, &st);
  ASSERT_GE(st.first_window_changes.size(), 3u);
  const auto& d = st.first_window_changes;
  for (std::size_t k = 1; k < d.size(); ++k) {
    EXPECT_LT(d[k], d[k - 1]);
    EXPECT_LT(d[k], 1.0);
  }
  EXPECT_LT(d.back(), c.picard_tol);
  EXPECT_GE(st.windows, 1);
}

TEST(Picard, DivergenceIsReportedWithPartialOutput) {
  const auto g = FourierGrid::make(DomainSpec::torus(16, 16));
  SolverConfig c;
  c.scheme = Scheme::picard;
  c.dt = 1e-2;
  c.t_final = 0.5;
  c.picard_max_iters = 5;
  Trajectory out;
  try {
    solve_into(random_band_limited(g, FrequencyBox{3, 3}, 2) * 200.0, {1, -1.0}, c, out);
    FAIL() << "expected a numerical error";
  } catch (const NumericalError& e) {
    EXPECT_EQ(e.kind(), NumericalFailure::picard_divergence);
  }
  EXPECT_GE(out.size(), 1u);
}

TEST(Picard, MaxIterationsIsDivergence) {
  const auto g = FourierGrid::make(DomainSpec::torus(16, 16));
  SolverConfig c;
  c.scheme = Scheme::picard;
  c.dt = 1e-3;
  c.t_final = 0.01;
  c.picard_max_iters = 1;
  try {
    solve(random_band_limited(g, FrequencyBox{3, 3}, 2), {1, -1.0}, c);
    FAIL() << "expected a numerical error";
  } catch (const NumericalError& e) {
    EXPECT_EQ(e.kind(), NumericalFailure::picard_divergence);
  }
}

TEST(Solve, NonFiniteDataIsRejected) {
  const auto g = FourierGrid::make(DomainSpec::torus(8, 8));
  std::vector<cplx> v(g->size(), 1.0);
  v[3] = std::nan("");
  EXPECT_THROW(solve(Field(g, v, Representation::physical), {1, -1.0}, SolverConfig{}), ConfigError);
}

// Every split-step substep is unitary, so only overflow of |u|^2 can make the
// state non-finite.
TEST(Solve, SplitStepOverflowIsNanDetected) {
  const auto g = FourierGrid::make(DomainSpec::torus(8, 8));
  SolverConfig c;
  c.dt = 0.1;
  c.t_final = 50.0;
  c.dealias = false;
  Trajectory out;
  try {
    solve_into(random_band_limited(g, FrequencyBox{3, 3}, 2) * 1e160, {1, -1.0}, c, out);
    FAIL() << "expected a numerical error";
  } catch (const NumericalError& e) {
    EXPECT_EQ(e.kind(), NumericalFailure::nan_detected);
  }
}

TEST(Contraction, HalvingTShrinksTheLipschitzConstant) {
  const auto g = FourierGrid::make(DomainSpec::cylinder_rxt(64, 16, 16 * kPi));
  ContractionOptions o;
  o.pairs = 4;
  o.steps = 16;
  // Large data put the predicted threshold inside the range where the
  // measured T^{3/4} law holds.
  const auto r = contraction_diagnostic(random_band_limited(g, FrequencyBox{2, 3}, 3) * 10.0, {1, -1.0}, o);
  ASSERT_EQ(r.halving_ratios.size(), 2u);
  for (double h : r.halving_ratios) EXPECT_NEAR(h, std::pow(2.0, -0.75), 0.2 * std::pow(2.0, -0.75));
  EXPECT_GT(r.C0, 0.0);
  EXPECT_GT(r.threshold, 0.0);
  EXPECT_TRUE(r.contraction_below_threshold);
}

TEST(Contraction, NeedsRxT) {
  const auto g = FourierGrid::make(DomainSpec::torus(16, 16));
  EXPECT_THROW(contraction_diagnostic(random_band_limited(g, FrequencyBox{2, 3}, 3), {1, -1.0}, {}),
               ConfigError);
}

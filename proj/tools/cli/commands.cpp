#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "cli/config.hpp"
#include "cli/output.hpp"
#include "ninls/counting.hpp"
#include "ninls/error.hpp"
#include "ninls/exact.hpp"
#include "ninls/norms.hpp"
#include "ninls/probes.hpp"
#include "ninls/solver.hpp"
#include "ninls/version.hpp"

namespace ninls::cli {
namespace {

// Everything a command needs once the top-level keys are settled. Commands
// read their blocks, call top.finish(), and only then compute.
struct Context {
  Block& top;
  std::uint64_t seed;
  Artifacts* out = nullptr;
  std::ostream& log;
};

using Command = std::function<void(Context&)>;

SolverConfig read_solver(Block b) {
  SolverConfig c;
  c.scheme = parse_scheme(b.text("scheme", to_string(c.scheme)));
  c.dt = b.number("dt", c.dt);
  c.t_final = b.number("t_final", c.t_final);
  c.picard_max_iters = static_cast<int>(b.integer("picard_max_iters", c.picard_max_iters));
  c.picard_tol = b.number("picard_tol", c.picard_tol);
  c.dealias = b.boolean("dealias", c.dealias);
  c.save_every = static_cast<int>(b.integer("save_every", c.save_every));
  c.picard_window_steps = static_cast<int>(b.integer("picard_window_steps", c.picard_window_steps));
  b.finish();
  c.validate();
  return c;
}

TimeQuadrature read_quadrature(Block& b, TimeQuadrature q = {}) {
  q.samples_per_unit = static_cast<int>(b.integer("samples_per_unit", q.samples_per_unit));
  q.rel_tol = b.number("rel_tol", q.rel_tol);
  q.max_samples = static_cast<int>(b.integer("max_samples", q.max_samples));
  if (q.samples_per_unit < 2) throw ConfigError("samples_per_unit must be >= 2");
  if (!(q.rel_tol > 0.0)) throw ConfigError("rel_tol must be positive");
  if (q.max_samples < q.samples_per_unit) throw ConfigError("max_samples must be >= samples_per_unit");
  return q;
}

EnsembleSpec read_ensemble(Block b, std::uint64_t seed, EnsembleSpec e, bool with_box) {
  e.gaussian = static_cast<int>(b.integer("gaussian", e.gaussian));
  e.single_modes = static_cast<int>(b.integer("single_modes", e.single_modes));
  e.packets = static_cast<int>(b.integer("packets", e.packets));
  if (with_box) {
    e.box.x_halfwidth = b.number("box_x", e.box.x_halfwidth);
    e.box.y_halfwidth = b.number("box_y", e.box.y_halfwidth);
    e.box.validate();
  }
  e.kappa_min = b.number("kappa_min", e.kappa_min);
  e.kappa_max = b.number("kappa_max", e.kappa_max);
  e.packets_in_box = b.boolean("packets_in_box", e.packets_in_box);
  b.finish();
  if (e.size() < 1) throw ConfigError("ensemble must have at least one member");
  e.seed = seed;
  return e;
}

std::string summary_line(const ProbeReport& r) {
  std::string s = r.probe_name + ": max_ratio " + format_double(r.max_ratio);
  if (r.fitted_exponent) s += ", fitted_exponent " + format_double(*r.fitted_exponent);
  return s + (r.tolerance_met ? ", tolerance met" : ", tolerance NOT met");
}

// Grid and model metadata so a report can be rerun on its own.
void describe(ProbeReport& r, const ModelParams& m, const DomainSpec& d) {
  r.set("alpha", m.alpha);
  r.set("epsilon", static_cast<std::int64_t>(m.epsilon));
  r.set("sign", std::string(to_string(m.sign)));
  r.set("geometry", std::string(to_string(d.geometry)));
  r.set("nx", static_cast<std::int64_t>(d.nx));
  r.set("ny", static_cast<std::int64_t>(d.ny));
  r.set("period_x", d.period_x);
  r.set("period_y", d.period_y);
  r.set("generator", std::string(kGeneratorName));
  r.set("normalization", std::string(kTransformNormalization));
}

// Largest edge ratio over the snapshots; a warning goes to the log when the
// solution reaches the ends of a truncated line.
double worst_edge_ratio(const Trajectory& tr, std::ostream& log) {
  double worst = 0.0;
  for (const auto& f : tr.states) worst = std::max(worst, edge_ratio(f));
  if (worst > kTruncationThreshold)
    log << "warning: solution mass near the truncation edge (edge ratio " << format_double(worst)
        << "); enlarge the box\n";
  return worst;
}

double max_rel_drift(const std::vector<double>& v) {
  double d = 0.0;
  for (double x : v) d = std::max(d, std::abs(x - v.front()));
  return v.front() != 0.0 ? d / std::abs(v.front()) : d;
}

// ---- simulate ------------------------------------------------------------

std::string trajectory_csv(const Trajectory& tr) {
  Csv csv({"t", "mass", "energy", "energy_unweighted", "hamiltonian", "l2_norm", "linf_norm",
           "h1_norm"});
  const auto h1 = SobolevIndex::bracket_sum(1.0);
  for (std::size_t k = 0; k < tr.size(); ++k) {
    const Field& f = tr.states[k];
    csv.cell(tr.times[k])
        .cell(tr.mass_ledger[k])
        .cell(tr.energy_ledger[k])
        .cell(tr.energy_unweighted_ledger[k])
        .cell(tr.hamiltonian_ledger[k])
        .cell(lp_norm(f, 2.0))
        .cell(lp_norm(f, kInf))
        .cell(sobolev_norm(f, h1));
    csv.end_row();
  }
  return csv.str();
}

std::string state_csv(const Field& f) {
  Csv csv({"i", "j", "x", "y", "re", "im"});
  const Field u = f.to_physical();
  const auto& g = u.grid();
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j) {
      const cplx z = u.at(i, j);
      csv.cell(static_cast<long>(i))
          .cell(static_cast<long>(j))
          .cell(g.points_x()[i])
          .cell(g.points_y()[j])
          .cell(z.real())
          .cell(z.imag());
      csv.end_row();
    }
  return csv.str();
}

void simulate(Context& c) {
  const ModelParams model = read_model(c.top.child("model"));
  const DomainSpec domain = read_domain(c.top.child("domain"), Geometry::TxT);
  Block init = c.top.child("initial");
  const std::string kind = init.text("kind", "random");
  FrequencyBox box;
  double l2 = 0.1;
  StandingWaveParams sw;
  if (kind == "random") {
    box.x_halfwidth = init.number("box_x", 3.0);
    box.y_halfwidth = init.number("box_y", 3.0);
    l2 = init.number("l2_norm", l2);
    if (!(l2 >= 0.0)) throw ConfigError("initial.l2_norm must be nonnegative");
  } else if (kind == "standing_wave") {
    sw.n = init.integer("n", sw.n);
    sw.theta = init.number("theta", sw.theta);
    sw.alpha = model.alpha;
    sw.epsilon = model.epsilon;
    sw.validate();
    if (model.sign != Nonlinearity::focusing)
      throw ConfigError("standing_wave data solves the focusing equation only");
    if (domain.geometry != Geometry::TxR) throw ConfigError("standing_wave data needs geometry TxR");
  } else {
    if (kind != "zero")
      throw ConfigError("initial.kind must be 'random', 'standing_wave' or 'zero' (got '" + kind + "')");
  }
  init.finish();
  const SolverConfig solver = read_solver(c.top.child("solver"));
  Block output = c.top.child("output");
  const bool final_state = output.boolean("final_state", false);
  output.finish();
  c.top.finish();

  const auto grid = FourierGrid::make(domain);
  const Field phi = kind == "random"          ? random_band_limited(grid, box, c.seed) * l2
                    : kind == "standing_wave" ? standing_wave(sw, 0.0, grid)
                                              : Field::zeros(grid);
  Trajectory tr;
  PicardStats stats;
  try {
    solve_into(phi, model, solver, tr, &stats);
  } catch (const NumericalError&) {
    if (!tr.empty()) c.out->write("trajectory.csv", trajectory_csv(tr));
    throw;
  }
  c.out->write("trajectory.csv", trajectory_csv(tr));
  if (final_state) c.out->write("final_state.csv", state_csv(tr.states.back()));

  ProbeReport r;
  r.probe_name = "simulate";
  r.seeds.push_back(c.seed);
  r.set("scheme", std::string(to_string(solver.scheme)));
  r.set("steps", static_cast<std::int64_t>(solver.steps()));
  r.set("dt", solver.t_final / solver.steps());
  r.set("t_final", solver.t_final);
  describe(r, model, domain);
  r.set("initial", kind);
  if (kind == "random") {
    r.set("box_x", box.x_halfwidth);
    r.set("box_y", box.y_halfwidth);
    r.set("l2_norm", l2);
  } else if (kind == "standing_wave") {
    r.set("n", static_cast<std::int64_t>(sw.n));
    r.set("theta", sw.theta);
  }
  r.set("dealias", solver.dealias);
  r.set("save_every", static_cast<std::int64_t>(solver.save_every));
  r.set("max_edge_ratio", worst_edge_ratio(tr, c.log));
  r.set("mass_drift", max_rel_drift(tr.mass_ledger));
  r.set("energy_drift", max_rel_drift(tr.energy_ledger));
  r.set("hamiltonian_drift", max_rel_drift(tr.hamiltonian_ledger));
  if (solver.scheme == Scheme::picard) {
    r.set("picard_windows", static_cast<std::int64_t>(stats.windows));
    r.set("picard_max_iterations", static_cast<std::int64_t>(stats.max_iterations));
  }
  r.add("mass_drift", max_rel_drift(tr.mass_ledger));
  r.add("energy_drift", max_rel_drift(tr.energy_ledger));
  r.add("hamiltonian_drift", max_rel_drift(tr.hamiltonian_ledger));
  r.tolerance_met = tr.states.back().all_finite();
  c.out->report("simulate", r);
  c.log << "simulate: " << tr.size() << " snapshots to t = " << format_double(tr.times.back())
        << ", mass drift " << format_double(max_rel_drift(tr.mass_ledger)) << "\n";
}

// ---- standing-wave-test ---------------------------------------------------

void standing_wave_test(Context& c) {
  Block mb = c.top.child("model");
  ModelParams model;
  model.epsilon = static_cast<int>(mb.integer("epsilon", 1));
  model.alpha = mb.number("alpha", -1.0);
  if (parse_nonlinearity(mb.text("sign", "focusing")) != Nonlinearity::focusing)
    throw ConfigError("standing-wave-test runs the focusing equation");
  mb.finish();
  model.validate();
  const DomainSpec domain = read_domain(c.top.child("domain"), Geometry::TxR);
  if (domain.geometry != Geometry::TxR) throw ConfigError("standing-wave-test needs geometry TxR");
  Block b = c.top.child("standing_wave");
  StandingWaveParams sw;
  sw.n = b.integer("n", 0);
  sw.theta = b.number("theta", 1.0);
  sw.alpha = model.alpha;
  sw.epsilon = model.epsilon;
  const double tol = b.number("tolerance", 1e-6);
  b.finish();
  sw.validate();
  const SolverConfig solver = read_solver(c.top.child("solver"));
  c.top.finish();

  const auto grid = FourierGrid::make(domain);
  Trajectory tr;
  auto write_rows = [&] {
    Csv csv({"t", "rel_l2_error", "mass", "energy", "hamiltonian"});
    for (std::size_t k = 0; k < tr.size(); ++k) {
      const Field exact = standing_wave(sw, tr.times[k], grid);
      const double err =
          lp_norm(tr.states[k].to_physical() - exact, 2.0) / lp_norm(exact, 2.0);
      csv.cell(tr.times[k]).cell(err).cell(tr.mass_ledger[k]).cell(tr.energy_ledger[k]);
      csv.cell(tr.hamiltonian_ledger[k]);
      csv.end_row();
    }
    c.out->write("standing_wave.csv", csv.str());
  };
  try {
    solve_into(standing_wave(sw, 0.0, grid), sw.model(), solver, tr);
  } catch (const NumericalError&) {
    if (!tr.empty()) write_rows();
    throw;
  }
  write_rows();

  ProbeReport r;
  r.probe_name = "standing_wave_regression";
  describe(r, sw.model(), domain);
  r.set("n", static_cast<std::int64_t>(sw.n));
  r.set("theta", sw.theta);
  r.set("sigma", sw.sigma());
  r.set("max_edge_ratio", worst_edge_ratio(tr, c.log));
  r.set("scheme", std::string(to_string(solver.scheme)));
  r.set("dt", solver.t_final / solver.steps());
  r.set("t_final", solver.t_final);
  r.set("tolerance", tol);
  r.set("profile_ode_residual", profile_ode_residual(sw, grid));
  r.set("pde_residual_t0", pde_residual_standing_wave(sw, 0.0, grid));
  const Field exact = standing_wave(sw, tr.times.back(), grid);
  const double err = lp_norm(tr.states.back().to_physical() - exact, 2.0) / lp_norm(exact, 2.0);
  r.add("t=" + format_double(tr.times.back()), err);
  r.tolerance_met = err <= tol;
  c.out->report("standing_wave_test", r);
  c.log << summary_line(r) << "\n";
}

// ---- illposed-demo --------------------------------------------------------

void illposed_demo(Context& c) {
  Block mb = c.top.child("model");
  IllposedFamilyParams fam;
  fam.alpha = mb.number("alpha", fam.alpha);
  fam.epsilon = static_cast<int>(mb.integer("epsilon", fam.epsilon));
  if (parse_nonlinearity(mb.text("sign", "focusing")) != Nonlinearity::focusing)
    throw ConfigError("illposed-demo uses focusing standing waves");
  mb.finish();
  Block b = c.top.child("illposed");
  fam.s = b.number("s", fam.s);
  fam.gamma = b.number("gamma", fam.gamma);
  fam.tau = b.number("tau", fam.tau);
  fam.delta = b.number("delta", fam.delta);
  const auto ns = b.integers("n", {8, 12, 16, 24, 32, 48, 64});
  const double t_probe = b.number("t_probe", 1.0);
  const int samples = static_cast<int>(b.integer("time_samples", 1000));
  b.finish();
  c.top.finish();

  std::vector<SeparationRow> rows;
  const auto r = separation_experiment(fam, ns, t_probe, samples, &rows);
  Csv csv({"n", "gamma_n", "d0", "d_max", "ratio"});
  for (const auto& row : rows) {
    csv.cell(row.n).cell(row.gamma_n).cell(row.d0).cell(row.d_max).cell(row.ratio);
    csv.end_row();
  }
  c.out->write("separation.csv", csv.str());
  c.out->report("illposed_separation", r);
  c.log << summary_line(r) << "\n";
}

// ---- counting-sweep -------------------------------------------------------

void counting_sweep(Context& c) {
  Block b = c.top.child("counting");
  const auto alphas = b.numbers("alphas", {-0.5, -1.0, -2.0});
  std::vector<double> Kdef;
  for (int k = 0; k <= 10; ++k) Kdef.push_back(std::ldexp(1.0, k));
  const auto Ks = b.numbers("K", Kdef);
  const auto Cs = b.numbers("C", {0, 0.5, 1, 10, 100, 1e4});
  std::vector<long> n0def;
  for (long n = 0; n <= 50; ++n) n0def.push_back(n);
  const auto n0s = b.integers("n0", n0def);
  b.finish();
  c.top.finish();

  Csv csv({"alpha", "C", "K", "n0", "measure", "ratio"});
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    std::vector<CountingRow> rows;
    const auto r = counting_lemma_sweep(alphas[k], Ks, Cs, n0s, &rows);
    for (const auto& row : rows) {
      csv.cell(row.alpha).cell(row.C).cell(row.K).cell(row.n0).cell(row.measure).cell(row.ratio);
      csv.end_row();
    }
    c.out->report("counting_lemma_" + std::to_string(k), r);
    c.log << summary_line(r) << " (alpha " << format_double(alphas[k]) << ")\n";
  }
  c.out->write("counting.csv", csv.str());
}

// ---- bilinear-sweep -------------------------------------------------------

void bilinear(Context& c) {
  Block b = c.top.child("bilinear");
  const double alpha = b.number("alpha", -1.0);
  const int points = static_cast<int>(b.integer("points", 200));
  const double kmin = b.number("K_min", 1.0);
  const double kmax = b.number("K_max", 64.0);
  b.finish();
  c.top.finish();
  if (points < 2) throw ConfigError("bilinear.points must be >= 2");

  std::vector<BilinearRow> rows;
  const auto r = bilinear_sweep(alpha, points, kmin, kmax, c.seed, &rows);
  Csv csv({"alpha", "tau", "xi", "n", "K1", "K2", "measure_A", "measure_B", "ratio_B", "ratio_AB",
           "ratio_A_product", "ratio_A_sqrt"});
  for (const auto& row : rows) {
    const auto& q = row.query;
    csv.cell(q.alpha).cell(q.tau).cell(q.xi).cell(q.n).cell(q.K1).cell(q.K2);
    csv.cell(row.measure_A).cell(row.measure_B).cell(row.ratio_B).cell(row.ratio_AB);
    csv.cell(row.ratio_A_product).cell(row.ratio_A_sqrt);
    csv.end_row();
  }
  c.out->write("bilinear.csv", csv.str());
  c.out->report("bilinear_shells", r);
  c.log << summary_line(r) << "\n";
}

// ---- probes ---------------------------------------------------------------

ProbeSetup read_probe_setup(Context& c, Geometry g, DomainSpec def) {
  ProbeSetup s;
  Block db = c.top.child("domain");
  if (db.has("geometry") || db.has("nx") || db.has("ny") || db.has("period_x") || db.has("period_y")) {
    def = read_domain(db, g);
  } else {
    db.finish();
  }
  if (def.geometry != g) throw ConfigError(std::string("this probe needs geometry ") + to_string(g));
  s.domain = def;
  s.ensemble = read_ensemble(c.top.child("ensemble"), c.seed, s.ensemble, true);
  return s;
}

void strichartz_probe(Context& c) {
  const ModelParams model = read_model(c.top.child("model"));
  ProbeSetup setup = read_probe_setup(c, Geometry::TxR, DomainSpec::cylinder_txr(16, 256, 16.0 * kPi));
  Block p = c.top.child("probe");
  setup.T = p.number("T", setup.T);
  setup.quad = read_quadrature(p);
  setup.check_refinement = p.boolean("check_refinement", true);
  const bool duhamel = p.boolean("duhamel", true);
  const double lambda_max = p.number("lambda_max", 20.0);
  p.finish();
  c.top.finish();
  if (!(setup.T > 0.0)) throw ConfigError("probe.T must be positive");

  const auto r = strichartz_ratio_txr(model, setup);
  c.out->report("strichartz_L4", r);
  c.log << summary_line(r) << "\n";
  if (duhamel) {
    const auto d = strichartz_ratio_duhamel_txr(model, setup, lambda_max);
    c.out->report("strichartz_duhamel", d);
    c.log << summary_line(d) << "\n";
  }
}

void mixed_norm_probe(Context& c) {
  const ModelParams model = read_model(c.top.child("model"));
  ProbeSetup setup = read_probe_setup(c, Geometry::RxT, DomainSpec::cylinder_rxt(256, 16, 16.0 * kPi));
  Block p = c.top.child("probe");
  setup.T = p.number("T", setup.T);
  setup.quad = read_quadrature(p);
  setup.check_refinement = p.boolean("check_refinement", true);
  p.finish();
  Block m = c.top.child("mixed");
  const double q = m.number("q", 12.0), pp = m.number("p", 6.0), s = m.number("s", 0.6);
  m.finish();
  c.top.finish();
  if (!(setup.T > 0.0)) throw ConfigError("probe.T must be positive");

  const auto r = mixed_norm_strichartz_rxt(model, setup, q, pp, s);
  c.out->report("mixed_norm", r);
  c.log << summary_line(r) << "\n";
}

void decoupling_probe(Context& c) {
  Block mb = c.top.child("model");
  if (mb.integer("epsilon", 0) != 0) throw ConfigError("decoupling-probe targets epsilon = 0");
  DecouplingOptions o;
  o.alpha = mb.number("alpha", o.alpha);
  parse_nonlinearity(mb.text("sign", "focusing"));
  mb.finish();
  Block db = c.top.child("domain");
  db.finish();  // the grid is chosen per N
  Block b = c.top.child("decoupling");
  const auto Ns = b.integers("N", {4, 8, 16, 32, 64});
  o.N_list.assign(Ns.begin(), Ns.end());
  o.derivative_exponent = b.number("derivative_exponent", o.derivative_exponent);
  b.finish();
  o.ensemble = read_ensemble(c.top.child("ensemble"), c.seed, o.ensemble, false);
  Block p = c.top.child("probe");
  o.T = p.number("T", o.T);
  o.quad = read_quadrature(p);
  p.finish();
  c.top.finish();
  if (!(o.T > 0.0)) throw ConfigError("probe.T must be positive");

  const auto r = decoupling_growth_probe(o);
  c.out->report("decoupling_growth", r);
  c.log << summary_line(r) << "\n";
}

void curvature(Context& c) {
  Block b = c.top.child("curvature");
  const auto alphas = b.numbers("alphas", {-0.5, -1.0, -2.0});
  const int points = static_cast<int>(b.integer("grid_points", 101));
  const bool write_rows = b.boolean("write_rows", true);
  b.finish();
  c.top.finish();

  std::vector<CurvatureRow> rows;
  const auto r = curvature_check(alphas, points, write_rows ? &rows : nullptr);
  if (write_rows) {
    Csv csv({"alpha", "v", "w", "e", "f", "g", "gauss_closed", "gauss_parametrized"});
    for (const auto& row : rows) {
      csv.cell(row.point.alpha).cell(row.point.v).cell(row.point.w);
      csv.cell(row.closed.e).cell(row.closed.f).cell(row.closed.g);
      csv.cell(row.closed.gauss_curvature).cell(row.gauss_parametrized);
      csv.end_row();
    }
    c.out->write("curvature.csv", csv.str());
  }
  c.out->report("curvature", r);
  c.log << summary_line(r) << "\n";
}

const std::map<std::string, Command>& table() {
  static const std::map<std::string, Command> t{
      {"simulate", simulate},
      {"standing-wave-test", standing_wave_test},
      {"illposed-demo", illposed_demo},
      {"counting-sweep", counting_sweep},
      {"bilinear-sweep", bilinear},
      {"strichartz-probe", strichartz_probe},
      {"mixed-norm-probe", mixed_norm_probe},
      {"decoupling-probe", decoupling_probe},
      {"curvature-check", curvature},
  };
  return t;
}

std::string manifest(const std::string& command, const Json& config, std::uint64_t seed,
                     const std::vector<std::string>& artifacts,
                     const std::vector<Artifacts::Summary>& summaries, const std::string& status,
                     const std::string& error) {
  nlohmann::ordered_json m;
  m["tool"] = "ninls";
  m["library_version"] = kVersion;
  m["command"] = command;
  m["config_hash"] = "fnv1a64:" + hex64(config_hash(config));
  m["seed"] = seed;
  m["generator"] = kGeneratorName;
  m["normalization"] = kTransformNormalization;
  m["status"] = status;
  m["error"] = error.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(error);
  m["artifacts"] = artifacts;
  nlohmann::ordered_json reports = nlohmann::ordered_json::array();
  for (const auto& r : summaries) {
    nlohmann::ordered_json e;
    e["report"] = r.stem;
    e["max_ratio"] = r.max_ratio;
    e["fitted_exponent"] =
        r.fitted_exponent ? nlohmann::ordered_json(*r.fitted_exponent) : nlohmann::ordered_json(nullptr);
    e["tolerance_met"] = r.tolerance_met;
    reports.push_back(e);
  }
  m["reports"] = reports;
  return m.dump(2) + "\n";
}

}  // namespace

const std::vector<std::pair<std::string, std::string>>& commands() {
  static const std::vector<std::pair<std::string, std::string>> c{
      {"simulate", "integrate the equation from random or standing-wave data"},
      {"standing-wave-test", "regression of the split-step/Picard run against the exact standing wave"},
      {"illposed-demo", "separation of the two standing-wave families in H^s"},
      {"counting-sweep", "level-set measures m(G_K)/K over (alpha, C, K, n0)"},
      {"bilinear-sweep", "random sweep of the shell measures m(A), m(B)"},
      {"strichartz-probe", "L4/L2 and Duhamel L4/L(4/3) ratios on TxR"},
      {"mixed-norm-probe", "L^q_T L^p_x H^s_y ratios on RxT"},
      {"decoupling-probe", "growth of L4/L2 ratios with the frequency box on the torus"},
      {"curvature-check", "second fundamental form of the characteristic surface"},
  };
  return c;
}

int run(const Invocation& inv, std::ostream& log, std::ostream& err) {
  const auto& t = table();
  const auto it = t.find(inv.command);
  if (it == t.end()) {
    err << "ninls: unknown command '" << inv.command << "'\n";
    return kConfigError;
  }
  Json config;
  std::uint64_t seed = 1;
  std::string out_dir;
  std::optional<Artifacts> out;
  try {
    config = load_config(inv.config_path);
    Block top(config, "config");
    const std::string cmd = top.text("command", inv.command);
    if (cmd != inv.command)
      throw ConfigError("config is for command '" + cmd + "', not '" + inv.command + "'");
    const long s = top.integer("seed", 1);
    if (s < 0) throw ConfigError("seed must be nonnegative");
    seed = inv.seed ? *inv.seed : static_cast<std::uint64_t>(s);
    out_dir = top.text("output_dir", "ninls_out");
    if (inv.out_dir) out_dir = *inv.out_dir;
    out.emplace(out_dir);
    Context ctx{top, seed, &*out, log};
    it->second(ctx);
    out->write("manifest.json", manifest(inv.command, config, seed, out->names(), out->summaries(), "ok", ""));
    return kOk;
  } catch (const ConfigError& e) {
    err << "ninls: config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const NumericalError& e) {
    err << "ninls: numerical failure: " << e.what() << "\n";
    if (out) {
      try {
        auto names = out->names();
        out->write("manifest.json", manifest(inv.command, config, seed, names, out->summaries(),
                                             std::string("numerical_failure:") + to_string(e.kind()),
                                             e.what()));
      } catch (const std::exception& w) {
        err << "ninls: could not write manifest: " << w.what() << "\n";
      }
    }
    return kNumericalFailure;
  } catch (const std::exception& e) {
    err << "ninls: " << e.what() << "\n";
    return kUnexpected;
  }
}

}  // namespace ninls::cli

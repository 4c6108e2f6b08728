// Acceptance run: one PASS/FAIL line per criterion. Pass criterion numbers as
// arguments to run a subset (e.g. `ninls_acceptance 1 4 10`).
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ninls/counting.hpp"
#include "ninls/exact.hpp"
#include "ninls/norms.hpp"
#include "ninls/probes.hpp"
#include "ninls/solver.hpp"

using namespace ninls;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double param_double(const ProbeReport& r, const std::string& key) {
  const auto& v = r.params.at(key);
  if (auto d = std::get_if<double>(&v)) return *d;
  if (auto i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
  if (auto b = std::get_if<bool>(&v)) return *b ? 1.0 : 0.0;
  return std::nan("");
}

double rel_l2(const Field& a, const Field& b) {
  return lp_norm(a.to_physical() - b.to_physical(), 2.0) / lp_norm(b, 2.0);
}

// Smooth small data: a band-limited random field of L^2 norm `size`.
Field small_data(GridPtr g, std::uint64_t seed, double size) {
  return random_band_limited(g, FrequencyBox{3.0, 3.0}, seed) * size;
}

// ---- 1 -------------------------------------------------------------------
Outcome standing_wave_regression() {
  const auto t0 = Clock::now();
  const auto grid = FourierGrid::make(DomainSpec::cylinder_txr(128, 512, 32.0 * kPi));
  StandingWaveParams sw;  // n=0, theta=1, alpha=-1, eps=1
  SolverConfig cfg;
  cfg.scheme = Scheme::split_step;
  cfg.dt = 1e-4;
  cfg.t_final = 0.1;
  cfg.save_every = 1000;
  const auto traj = solve(standing_wave(sw, 0.0, grid), sw.model(), cfg);
  const double err = rel_l2(traj.states.back(), standing_wave(sw, cfg.t_final, grid));
  const double rt = seconds_since(t0);
  return {err <= 1e-6 && rt <= 60.0,
          "rel L2 error " + fmt("%.3e", err) + " (tol 1e-6), runtime " + fmt("%.1f", rt) +
              " s (tol 60 s)"};
}

// ---- 2 -------------------------------------------------------------------
double max_rel_drift(const std::vector<double>& v) {
  double d = 0.0;
  for (double x : v) d = std::max(d, std::abs(x - v.front()));
  return d / std::abs(v.front());
}

Outcome conservation(std::string* extra) {
  const auto grid = FourierGrid::make(DomainSpec::torus(32, 32));
  bool ok = true;
  std::ostringstream os, info;
  double worst_mass = 0.0, worst_energy = 0.0;
  for (auto sign : {Nonlinearity::focusing, Nonlinearity::defocusing}) {
    ModelParams mp{1, -1.0, sign};
    const Field phi = small_data(grid, sign == Nonlinearity::focusing ? 21 : 22, 0.1);
    for (auto scheme : {Scheme::split_step, Scheme::picard}) {
      SolverConfig cfg;
      cfg.scheme = scheme;
      cfg.dt = 1e-4;
      cfg.t_final = 0.1;  // 1000 steps
      const auto traj = solve(phi, mp, cfg);
      const double dm = max_rel_drift(traj.mass_ledger);
      const double de = max_rel_drift(traj.energy_ledger);
      const double dh = max_rel_drift(traj.hamiltonian_ledger);
      if (scheme == Scheme::split_step) {
        worst_mass = std::max(worst_mass, dm);
        if (dm > 1e-10) ok = false;
      }
      worst_energy = std::max(worst_energy, de);
      if (de > 1e-6) ok = false;
      info << " " << to_string(sign) << "/" << to_string(scheme) << ": E " << fmt("%.2e", de)
           << ", H " << fmt("%.2e", dh) << ";";
    }
  }
  os << "split-step mass drift " << fmt("%.2e", worst_mass) << " (tol 1e-10), energy drift "
     << fmt("%.2e", worst_energy) << " (tol 1e-6)";
  *extra = "relative drifts over [0,0.1], weighted energy E and Hamiltonian H:" + info.str();
  return {ok, os.str()};
}

// ---- 3 -------------------------------------------------------------------
Outcome cross_validation() {
  const auto grid = FourierGrid::make(DomainSpec::cylinder_txr(32, 128, 16.0 * kPi));
  double worst = 0.0;
  for (auto sign : {Nonlinearity::focusing, Nonlinearity::defocusing}) {
    ModelParams mp{1, -1.0, sign};
    const Field phi = small_data(grid, 31, 0.1);
    SolverConfig cfg;
    cfg.dt = 1e-4;
    cfg.t_final = 0.05;
    cfg.save_every = 500;
    cfg.scheme = Scheme::split_step;
    const auto a = solve(phi, mp, cfg);
    cfg.scheme = Scheme::picard;
    const auto b = solve(phi, mp, cfg);
    worst = std::max(worst, rel_l2(b.states.back(), a.states.back()));
  }
  return {worst <= 1e-5, "Picard vs split-step rel L2 at t=0.05: " + fmt("%.3e", worst) +
                             " (tol 1e-5), ||phi||=0.1"};
}

// ---- 4 -------------------------------------------------------------------
Outcome counting_lemma() {
  const auto t0 = Clock::now();
  std::vector<double> Ks;
  for (int k = 0; k <= 10; ++k) Ks.push_back(std::ldexp(1.0, k));
  const std::vector<double> Cs{0, 0.5, 1, 10, 100, 1e4};
  std::vector<long> n0s;
  for (long n = 0; n <= 50; ++n) n0s.push_back(n);
  bool ok = true;
  std::ostringstream os;
  for (double a : {-0.5, -1.0, -2.0}) {
    const auto r = counting_lemma_sweep(a, Ks, Cs, n0s);
    const double slope = *r.fitted_exponent;
    if (!(r.max_ratio <= 10.0 && std::abs(slope) <= 0.05)) ok = false;
    os << "alpha=" << a << ": max " << fmt("%.3f", r.max_ratio) << ", slope "
       << fmt("%.3f", slope) << "; ";
  }
  const double rt = seconds_since(t0);
  if (rt > 30.0) ok = false;
  os << "(tol max<=10, |slope|<=0.05), runtime " << fmt("%.2f", rt) << " s";
  return {ok, os.str()};
}

// ---- 5 -------------------------------------------------------------------
// Jittered-midpoint estimate of the level-set area, independent of the
// closed form: counts sample points of a fine xi mesh inside the slab.
double levelset_estimate(const LevelSetQuery& q, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> jitter(0.0, 1.0);
  const double top = q.C + q.K;
  const double X = std::sqrt(top) + 1.0;
  const int cells = 400000;
  const double h = 2.0 * X / cells;
  const long B = static_cast<long>(std::ceil(std::sqrt(2.0 * top))) + std::labs(q.n0) + 2;
  double total = 0.0;
  for (long n = -B; n <= B; ++n) {
    const double w = 0.5 * (n * n - q.alpha * std::pow(n, 4)) +
                     0.5 * ((n - q.n0) * (n - q.n0) - q.alpha * std::pow(n - q.n0, 4));
    if (w > top) continue;
    long hits = 0;
    for (int c = 0; c < cells; ++c) {
      const double xi = -X + (c + jitter(rng)) * h;
      const double v = xi * xi + w;
      if (v >= q.C && v <= top) ++hits;
    }
    total += hits * h;
  }
  return total;
}

Outcome shell_measures() {
  const auto r = bilinear_sweep(-1.0, 200, 1.0, 64.0, 5);
  const bool chain = std::get<bool>(r.params.at("chain_inequality_holds"));
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    LevelSetQuery q;
    q.alpha = -std::exp(std::log(0.25) + U(rng) * std::log(16.0));
    q.C = 100.0 * U(rng);
    q.K = 1.0 + 63.0 * U(rng);
    q.n0 = static_cast<long>(U(rng) * 6);
    const double exact = levelset_measure(q);
    const double est = levelset_estimate(q, rng);
    worst = std::max(worst, std::abs(exact - est) / std::max(exact, 1e-300));
  }
  const bool ok = r.max_ratio <= 10.0 && chain && worst <= 0.01;
  return {ok, "max m(B)/(K1+K2) " + fmt("%.3f", r.max_ratio) + " (tol 10), m(A) <= 4 max(K) m(B) " +
                  (chain ? "holds" : "violated") + " on 200 points, levelset vs mesh estimate max rel " +
                  fmt("%.2e", worst) + " (tol 1e-2)"};
}

// ---- 6 -------------------------------------------------------------------
Outcome xstar_identity() {
  std::mt19937_64 rng(66);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const double alpha = -std::exp(std::log(1e-2) + U(rng) * std::log(1e4));
    const double gamma = (k % 2 == 0) ? 1e6 * U(rng) : std::pow(10.0, -6.0 + 12.0 * U(rng));
    const double x = xstar(alpha, gamma);
    const double w = x * x - alpha * x * x * x * x;
    worst = std::max(worst, std::abs(w - gamma) / (1.0 + gamma));
  }
  return {worst <= 1e-10, "max |omega(x*)-gamma|/(1+gamma) = " + fmt("%.2e", worst) + " (tol 1e-10)"};
}

// ---- 7 -------------------------------------------------------------------
Outcome curvature() {
  const auto r = curvature_check({-0.5, -1.0, -2.0}, 101);
  std::ostringstream os;
  os << "f==0 " << std::get<bool>(r.params.at("f_exactly_zero")) << ", g>0 "
     << std::get<bool>(r.params.at("g_positive")) << ", e>=0 with e>0 iff v!=0 "
     << std::get<bool>(r.params.at("e_nonnegative_and_positive_iff_v_nonzero"))
     << ", max path discrepancy " << fmt("%.2e", param_double(r, "max_gauss_path_discrepancy"))
     << " (tol 1e-12)";
  return {r.tolerance_met, os.str()};
}

// ---- 8 -------------------------------------------------------------------
Outcome decoupling() {
  const auto t0 = Clock::now();
  DecouplingOptions opts;
  const auto r = decoupling_growth_probe(opts);
  const double rt = seconds_since(t0);
  const double slope = *r.fitted_exponent;
  const double dslope = param_double(r, "D_slope");
  const bool ok = slope <= 0.125 + 0.05 && std::abs(dslope) <= 0.05 && rt <= 300.0 &&
                  opts.ensemble.size() >= 50;
  return {ok, "raw slope " + fmt("%.4f", slope) + " (tol <= 0.175), D-normalized slope " +
                  fmt("%.4f", dslope) + " (tol |.|<=0.05), ensemble " +
                  std::to_string(opts.ensemble.size()) + "/N, runtime " + fmt("%.1f", rt) + " s"};
}

// ---- 9 -------------------------------------------------------------------
Outcome strichartz_stability() {
  const auto t0 = Clock::now();
  ModelParams mp{1, -1.0, Nonlinearity::focusing};
  ProbeSetup txr;
  const auto a = strichartz_ratio_txr(mp, txr);
  const auto b = strichartz_ratio_duhamel_txr(mp, txr);
  ProbeSetup rxt;
  rxt.domain = DomainSpec::cylinder_rxt(256, 16, 16.0 * kPi);
  const auto c = mixed_norm_strichartz_rxt(mp, rxt, 12.0, 6.0, 0.6);
  const double ga = param_double(a, "refinement_growth");
  const double gb = param_double(b, "refinement_growth");
  const double gc = param_double(c, "refinement_growth");
  const bool ok = a.tolerance_met && b.tolerance_met && c.tolerance_met &&
                  txr.ensemble.size() >= 100;
  return {ok, "growth L4/L2 " + fmt("%+.2e", ga) + ", Duhamel " + fmt("%+.2e", gb) +
                  ", mixed (12,6,0.6) " + fmt("%+.2e", gc) + " (tol 0.05), ensemble " +
                  std::to_string(txr.ensemble.size()) + ", runtime " +
                  fmt("%.1f", seconds_since(t0)) + " s"};
}

// ---- 10 ------------------------------------------------------------------
Outcome illposed_witness() {
  const auto t0 = Clock::now();
  const auto r = separation_experiment(IllposedFamilyParams{}, {8, 12, 16, 24, 32, 48, 64}, 1.0);
  const double rt = seconds_since(t0);
  const bool ok = r.tolerance_met && rt <= 10.0;
  std::ostringstream os;
  os << "d0 decreasing " << std::get<bool>(r.params.at("d0_decreasing")) << ", d0(64)/d0(8) "
     << fmt("%.3f", param_double(r, "d0_decay")) << " (tol 0.1), min max_t d/d0 for n>=32 "
     << fmt("%.1f", param_double(r, "min_ratio_n_ge_32")) << " (tol 100), runtime "
     << fmt("%.2f", rt) << " s";
  return {ok, os.str()};
}

// ---- 11 ------------------------------------------------------------------
Outcome contraction() {
  const auto grid = FourierGrid::make(DomainSpec::cylinder_rxt(64, 16, 16.0 * kPi));
  ModelParams mp{1, -1.0, Nonlinearity::focusing};
  const Field phi = random_band_limited(grid, FrequencyBox{3.0, 3.0}, 7);
  ContractionOptions opts;
  const auto r = contraction_diagnostic(phi, mp, opts);
  const double target = std::pow(2.0, -0.75);
  bool ok = r.halving_ratios.size() == 2;
  std::ostringstream os;
  os << "L(T/2)/L(T):";
  for (double h : r.halving_ratios) {
    os << " " << fmt("%.4f", h);
    if (std::abs(h / target - 1.0) > 0.2) ok = false;
  }
  os << " (target " << fmt("%.4f", target) << " +-20%), L(T):";
  for (const auto& p : r.points) os << " " << fmt("%.3e", p.lipschitz);
  os << ", fitted exponent " << fmt("%.3f", r.fitted_exponent);
  return {ok, os.str()};
}

// ---- 12 ------------------------------------------------------------------
std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Outcome determinism() {
#ifndef NINLS_CLI_PATH
  return {false, "CLI not built"};
#else
  const fs::path root = fs::temp_directory_path() / "ninls_acceptance_determinism";
  fs::remove_all(root);
  fs::create_directories(root);
  struct Case {
    std::string command, config;
  };
  const std::vector<Case> cases{
      {"simulate",
       R"({"model": {"epsilon": 1, "alpha": -1.0, "sign": "focusing"},
           "domain": {"geometry": "TxT", "nx": 16, "ny": 16},
           "initial": {"kind": "random", "box_x": 3, "box_y": 3, "l2_norm": 0.5},
           "solver": {"scheme": "split_step", "dt": 1e-3, "t_final": 0.05}})"},
      {"simulate",
       R"({"model": {"epsilon": 1, "alpha": -1.0, "sign": "defocusing"},
           "domain": {"geometry": "TxT", "nx": 16, "ny": 16},
           "initial": {"kind": "random", "box_x": 3, "box_y": 3, "l2_norm": 0.5},
           "solver": {"scheme": "picard", "dt": 1e-3, "t_final": 0.05}})"},
      {"counting-sweep", R"({"counting": {"alphas": [-1.0], "K": [1, 2, 4, 8], "C": [0, 1, 10], "n0": [0, 1, 2, 3]}})"},
      {"bilinear-sweep", R"({"bilinear": {"alpha": -1.0, "points": 20}})"},
      {"illposed-demo", R"({"illposed": {"n": [8, 16, 32]}})"},
      {"curvature-check", R"({"curvature": {"grid_points": 11}})"},
      {"strichartz-probe",
       R"({"domain": {"geometry": "TxR", "nx": 16, "ny": 128, "period_y": 50.26548245743669},
           "probe": {"T": 0.5, "check_refinement": false},
           "ensemble": {"gaussian": 4, "single_modes": 2, "packets": 2}})"},
  };
  std::vector<std::string> diffs;
  int files = 0;
  for (std::size_t k = 0; k < cases.size(); ++k) {
    const fs::path cfg = root / ("case" + std::to_string(k) + ".json");
    std::ofstream(cfg) << cases[k].config;
    for (int run = 0; run < 2; ++run) {
      const fs::path out = root / ("case" + std::to_string(k) + "_run" + std::to_string(run));
      const std::string cmd = std::string("\"") + NINLS_CLI_PATH + "\" " + cases[k].command +
                              " --config \"" + cfg.string() + "\" --seed 17 --out \"" +
                              out.string() + "\" > /dev/null 2>&1";
      if (std::system(cmd.c_str()) != 0) return {false, "CLI run failed: " + cases[k].command};
    }
    const fs::path a = root / ("case" + std::to_string(k) + "_run0");
    const fs::path b = root / ("case" + std::to_string(k) + "_run1");
    for (const auto& e : fs::directory_iterator(a)) {
      ++files;
      const fs::path other = b / e.path().filename();
      if (!fs::exists(other) || slurp(e.path()) != slurp(other))
        diffs.push_back(cases[k].command + "/" + e.path().filename().string());
    }
  }
  fs::remove_all(root);
  std::string detail = std::to_string(files) + " artifacts over " + std::to_string(cases.size()) +
                       " commands compared byte-for-byte";
  if (!diffs.empty()) detail += ", differing: " + diffs.front();
  return {diffs.empty() && files > 0, detail};
#endif
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));
  std::string conservation_info;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"standing-wave regression", standing_wave_regression},
      {"conservation", [&] { return conservation(&conservation_info); }},
      {"scheme cross-validation", cross_validation},
      {"counting lemma", counting_lemma},
      {"shell measures", shell_measures},
      {"xstar inverse identity", xstar_identity},
      {"curvature", curvature},
      {"decoupling growth", decoupling},
      {"Strichartz stability", strichartz_stability},
      {"ill-posedness witness", illposed_witness},
      {"contraction scaling", contraction},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    if (!wanted.empty() && !wanted.count(id)) continue;
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, criteria[k].first.c_str(),
                o.detail.c_str());
    if (id == 2 && !conservation_info.empty())
      std::printf("     info: %s\n", conservation_info.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}

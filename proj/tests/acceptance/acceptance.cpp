// Acceptance checks, one line per criterion:
//   chainctl_acceptance            run all twelve
//   chainctl_acceptance 3 7        run criteria 3 and 7
// Exit status is 0 only when every selected criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "chainctl/controllability.hpp"
#include "chainctl/hamiltonians.hpp"
#include "chainctl/linalg.hpp"
#include "chainctl/metrics.hpp"
#include "chainctl/optimizer.hpp"
#include "chainctl/propagation.hpp"
#include "chainctl/recipes.hpp"
#include "chainctl/rng.hpp"
#include "chainctl/robustness.hpp"
#include "finite_difference.hpp"
#include "oracles.hpp"

namespace {

using namespace chainctl;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

constexpr std::uint64_t kSeed = 20240601;
// The thermal ensemble is steered in every excitation block at once, which
// needs a longer pulse than the pure ground-state recipe.
constexpr double kEnsembleHorizon = 4.0;

// Best of kRecipeRestarts optimizations of the ground-state problem over the
// recipe horizon, cached per chain length.
const OptimizationResult& recipe_pulse(int spins) {
  static std::map<int, OptimizationResult> cache;
  if (const auto it = cache.find(spins); it != cache.end()) return it->second;
  const auto problem = ControlProblem::ground_state(ChainSpec::uniform(spins));
  std::optional<OptimizationResult> best;
  for (int r = 0; r < kRecipeRestarts; ++r) {
    const Pulse init = random_pulse(kRecipeSteps, recipe_duration(spins),
                                    derive_seed(kSeed, {static_cast<std::uint64_t>(spins), static_cast<std::uint64_t>(r)}));
    auto res = optimize_pulse(problem, init);
    if (!best || res.fidelity > best->fidelity) best = std::move(res);
  }
  return cache.emplace(spins, std::move(*best)).first->second;
}

Outcome criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto& r = recipe_pulse(4);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {r.concurrence >= 0.999 && secs < 60.0,
          fmt("N=4 concurrence %.6f (>= 0.999), fidelity %.6f, t_f %.3f, %.1f s (< 60 s)", r.concurrence, r.fidelity,
              r.pulse.duration(), secs)};
}

Outcome criterion_2() {
  const auto& r = recipe_pulse(4);
  const auto rho = reduced_end_density(ControlProblem::ground_state(ChainSpec::uniform(4)).final_pure_state(r.pulse));
  const double off = std::abs(rho(1, 2));
  const double d0 = rho(0, 0).real(), d1 = rho(1, 1).real(), d2 = rho(2, 2).real(), d3 = rho(3, 3).real();
  const double diag_err =
      std::max({std::abs(d0), std::abs(d1 - 0.5), std::abs(d2 - 0.5), std::abs(d3)});
  return {off >= 0.499 && diag_err <= 5e-3,
          fmt("|rho_23| %.5f (>= 0.499), diag {%.4f, %.4f, %.4f, %.4f}, max deviation %.2e (<= 5e-3)", off, d0, d1, d2,
              d3, diag_err)};
}

Outcome criterion_3() {
  const ChainSpec s4 = ChainSpec::uniform(4);
  const auto reg = strongly_regular_connected_check(build_h0(s4, 2), build_h1(s4, 2));
  const double r2 = std::sqrt(2.0), r3 = std::sqrt(3.0);
  const std::vector<double> expected = {-2 * r3 - 3, -2 * r2 - 1, -1, 2 * r3 - 3, 2 * r2 - 1, 3};
  double eig_err = 0.0;
  for (int i = 0; i < 6; ++i) eig_err = std::max(eig_err, std::abs(reg.eigenvalues(i) - expected[static_cast<std::size_t>(i)]));
  const bool a = reg.controllable_by_criterion && eig_err <= 1e-9;

  const ChainSpec s5 = ChainSpec::uniform(5);
  const auto lie5 = dynamical_lie_dimension(build_h0(s5, 2), build_h1(s5, 2));
  const bool b = lie5.dimension == 100;

  int cases = 0, confirmed = 0;
  for (int spins = 2; spins <= 8; ++spins) {
    for (int n = 1; n < spins; ++n) {
      if (binomial(spins, n) > 15) continue;
      for (double xi : {0.0, 0.5, 2.0}) {
        ChainSpec spec = ChainSpec::uniform(spins);
        spec.leakage = xi;
        const auto h0 = build_h0(spec, n), h1 = build_h1(spec, n);
        if (!strongly_regular_connected_check(h0, h1).controllable_by_criterion) continue;
        ++cases;
        if (dynamical_lie_dimension(h0, h1).full()) ++confirmed;
      }
    }
  }
  const bool c = cases > 0 && confirmed == cases;
  return {a && b && c, fmt("(a) N=4 criterion %s, eigenvalue error %.1e; (b) N=5 Lie dimension %zu; (c) %d/%d "
                           "criterion-true chain cases with M <= 15 have dimension M^2",
                           reg.controllable_by_criterion ? "true" : "false", eig_err, lie5.dimension, confirmed, cases)};
}

Outcome criterion_4() {
  const ChainSpec spec = ChainSpec::uniform(4);
  const auto problem = ControlProblem::ensemble(spec, thermal_state(spec, 2.0));
  const double bound2 = thermal_fidelity_bound(spec, 2.0);
  std::optional<OptimizationResult> best;
  for (int r = 0; r < kRecipeRestarts; ++r) {
    auto res = optimize_pulse(problem, random_pulse(kRecipeSteps, kEnsembleHorizon * recipe_duration(4), derive_seed(kSeed, {4, 100, static_cast<std::uint64_t>(r)})));
    if (!best || res.fidelity > best->fidelity) best = std::move(res);
  }
  const std::vector<double> grid = {0.25, 0.5, 1.0, 1.5, 2.0};
  const auto sweep = sweep_thermal(best->pulse, spec, grid);
  double worst_gap = 0.0;
  std::ostringstream gaps;
  for (const auto& p : sweep.points) {
    const double gap = *p.bound - *p.fidelity;
    worst_gap = std::max(worst_gap, gap);
    gaps << fmt(" %.2f:%.1e", p.parameter, gap);
  }
  const double c1 = sweep.points[2].concurrence;
  const bool bound_ok = bound2 - best->fidelity <= 1e-3 && worst_gap <= 1e-2;
  const bool conc_ok = std::abs(c1 - 0.9762) <= 0.01;
  return {bound_ok, fmt("kT=2 fidelity %.6f vs bound %.6f (gap <= 1e-3); same pulse bound gaps [kT:gap]%s (<= 1e-2); "
                        "concurrence at kT=1 %.4f vs 0.9762 (%s, reported only)",
                        best->fidelity, bound2, gaps.str().c_str(), c1, conc_ok ? "within 0.01" : "not within 0.01")};
}

Outcome criterion_5() {
  double worst = 0.0;
  for (int spins : {4, 6}) {
    const ChainSpec spec = ChainSpec::uniform(spins);
    worst = std::max(worst, std::abs(thermal_fidelity_bound(spec, 0.0) - 1.0));
    worst = std::max(worst, std::abs(thermal_fidelity_bound(spec, 1e-4) - 1.0));
    worst = std::max(worst, std::abs(thermal_fidelity_bound(spec, 1e9) - 0.25));
  }
  return {worst <= 1e-6, fmt("largest deviation from the limits 1 and 1/4: %.2e (<= 1e-6)", worst)};
}

Outcome criterion_6() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  int problems = 0;
  for (int spins : {2, 4, 6}) {
    for (std::size_t steps : {3U, 8U}) {
      for (int seed = 0; seed < 20; ++seed) {
        std::mt19937_64 gen(derive_seed(kSeed, {6, static_cast<std::uint64_t>(spins), steps, static_cast<std::uint64_t>(seed)}));
        std::uniform_real_distribution<double> amp(-2.0, 2.0), dur(0.5, 3.0);
        Pulse p;
        p.dt = dur(gen) / static_cast<double>(steps);
        for (std::size_t m = 0; m < steps; ++m) p.amplitudes.push_back(amp(gen));
        const auto problem = ControlProblem::ground_state(ChainSpec::uniform(spins));
        const auto g = objective_and_gradient(p, problem).gradient;
        worst = std::max(worst, oracle::max_relative_error(g, oracle::fd_gradient(p, problem)));
        ++problems;
      }
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {worst < 1e-6 && secs < 60.0,
          fmt("%d problems, worst elementwise relative error %.2e (< 1e-6), %.1f s", problems, worst, secs)};
}

Outcome criterion_7() {
  std::mt19937_64 gen(derive_seed(kSeed, {7}));
  std::uniform_real_distribution<double> amp(-2.0, 2.0);
  double worst = 0.0, leaked = 0.0;
  for (int spins = 2; spins <= 6; ++spins) {
    const ChainSpec spec = ChainSpec::uniform(spins);
    const oracle::MatrixXcd h0 = oracle::full_h0(spins), h1 = oracle::full_h1(spins);
    Pulse p;
    p.dt = 0.25;
    for (int m = 0; m < 6; ++m) p.amplitudes.push_back(amp(gen));
    for (int n = 0; n <= spins; ++n) {
      const auto idx = oracle::sector(spins, n);
      const auto psi = oracle::random_state(static_cast<Eigen::Index>(idx.size()), gen);
      oracle::VectorXcd full = oracle::embed(psi, spins, idx);
      for (double b : p.amplitudes) full = oracle::expm_i(h0 + b * h1, p.dt) * full;
      const auto sub = evolve_pure(p, psi, build_h0(spec, n), build_h1(spec, n), 1.0).final_state;
      const oracle::VectorXcd back = oracle::embed(sub, spins, idx);
      worst = std::max(worst, (back - full).norm());
      // Full-space weight outside the initial sector.
      double outside = 0.0;
      for (Eigen::Index i = 0; i < full.size(); ++i) {
        if (std::find(idx.begin(), idx.end(), i) == idx.end()) outside += std::norm(full(i));
      }
      leaked = std::max(leaked, outside);
      const auto blocks = evolve_density_unitary(p, BlockDensity::from_pure({spins, n, psi}), spec);
      if (blocks.blocks.size() != 1 || blocks.blocks[0].excitations != n) leaked = 1.0;
    }
  }
  return {worst <= 1e-9 && leaked == 0.0,
          fmt("N=2..6 all sectors: max full-vs-subspace deviation %.2e (<= 1e-9), population outside the initial "
              "sector %.1e (== 0), block state keeps a single block",
              worst, leaked)};
}

Outcome criterion_8() {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<double> n2, tc;
  std::ostringstream table;
  bool all_found = true;
  for (int spins = 4; spins <= 8; ++spins) {
    std::vector<double> durations;
    for (double t = 0.25 * spins; t <= 8.0 + 1e-9; t += 0.25) durations.push_back(t);
    MinTimeOptions opts;
    opts.steps = kRecipeSteps;
    opts.restarts = kRecipeRestarts;
    opts.seed = derive_seed(kSeed, {8, static_cast<std::uint64_t>(spins)});
    opts.optimizer.target_fidelity = 0.99;
    opts.stop_at_critical = true;
    const auto r = min_time_scan(ControlProblem::ground_state(ChainSpec::uniform(spins)), 0.99, durations, opts);
    if (!r.critical_time) {
      all_found = false;
      table << fmt(" N=%d:none", spins);
      continue;
    }
    n2.push_back(spins * spins);
    tc.push_back(*r.critical_time);
    table << fmt(" N=%d:%.2f", spins, *r.critical_time);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (n2.size() < 2) return {false, "fewer than two chains reached the threshold:" + table.str()};
  const auto fit = fit_line(n2, tc);
  return {all_found && fit.r_squared >= 0.9 && secs < 3600.0,
          fmt("T_C%s; fit T_C = %.3f + %.4f N^2, R^2 %.4f (>= 0.9), %.0f s (< 3600 s)", table.str().c_str(),
              fit.intercept, fit.slope, fit.r_squared, secs)};
}

Outcome criterion_9() {
  const auto& r = recipe_pulse(4);
  const ChainSpec spec = ChainSpec::uniform(4);
  const double ideal = r.concurrence;
  const std::vector<double> zero = {0.0};
  const double thermal = std::abs(sweep_thermal(r.pulse, spec, zero).points[0].concurrence - ideal);
  const double leak = std::abs(sweep_leakage(r.pulse, spec, zero).points[0].concurrence - ideal);
  double dis = 0.0;
  const SweepResult disorder = sweep_disorder(r.pulse, spec, zero, 10, kSeed);
  for (double c : disorder.points[0].sample_concurrence) {
    dis = std::max(dis, std::abs(c - ideal));
  }
  const double deph =
      std::abs(sweep_dephasing(r.pulse, spec, zero, DephasingModel::AllSpins).points[0].concurrence - ideal);
  return {thermal <= 1e-10 && leak <= 1e-10 && dis <= 1e-10 && deph <= 1e-6,
          fmt("deviation from ideal %.6f: thermal(kT=0) %.1e, leakage(xi=0) %.1e, disorder(alpha=0) %.1e "
              "(<= 1e-10 each); dephasing(gamma=0) %.1e (<= 1e-6)",
              ideal, thermal, leak, dis, deph)};
}

Outcome criterion_10() {
  const auto& r6 = recipe_pulse(6);
  const double ideal = r6.concurrence;
  const std::vector<double> small = {0.01};
  const auto weak = sweep_disorder(r6.pulse, ChainSpec::uniform(6), small, 100, derive_seed(kSeed, {10, 6}));
  const bool weak_ok = weak.points[0].concurrence >= 0.95 * ideal;

  ReoptimizeOptions reopt;
  reopt.enabled = true;
  const std::vector<double> strong = {0.1};
  const auto re = sweep_disorder(r6.pulse, ChainSpec::uniform(6), strong, 100, derive_seed(kSeed, {10, 60}), reopt);
  const bool re_ok = re.points[0].concurrence >= 0.99;

  std::vector<double> stds;
  std::ostringstream trend;
  for (int spins : {6, 8, 10}) {
    // Equal optimization budget per chain length; N=10 costs about a second per gradient.
    OptimizerOptions opts;
    opts.target_fidelity = 0.99;
    opts.max_iterations = 300;
    const auto r = optimize_pulse(ControlProblem::ground_state(ChainSpec::uniform(spins)),
                                  random_pulse(kRecipeSteps, recipe_duration(spins),
                                               derive_seed(kSeed, {static_cast<std::uint64_t>(spins), 0})),
                                  opts);
    const auto s = sweep_disorder(r.pulse, ChainSpec::uniform(spins), small, 100,
                                  derive_seed(kSeed, {10, static_cast<std::uint64_t>(spins)}));
    stds.push_back(s.points[0].stddev);
    trend << fmt(" N=%d:%.2e(pulse fidelity %.4f)", spins, s.points[0].stddev, r.fidelity);
  }
  const bool trend_ok = stds[0] > stds[1] && stds[1] > stds[2];
  return {weak_ok && re_ok && trend_ok,
          fmt("N=6 alpha=0.01 mean %.5f vs 0.95 x ideal %.5f (%zu excluded); reoptimized alpha=0.1 mean %.5f (>= 0.99); "
              "sample std at alpha=0.01%s (decreasing)",
              weak.points[0].concurrence, 0.95 * ideal, weak.points[0].excluded, re.points[0].concurrence,
              trend.str().c_str())};
}

Outcome criterion_11() {
  const Eigen::Vector4cd singlet(0.0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0.0);
  double worst = std::abs(concurrence(singlet * singlet.adjoint()) - 1.0);
  Eigen::Matrix4cd product = Eigen::Matrix4cd::Zero();
  product(0, 0) = 1.0;
  worst = std::max(worst, concurrence(product));
  for (double p : {0.2, 0.4, 0.6, 0.8}) {
    worst = std::max(worst, std::abs(concurrence(oracle::werner(p)) - std::max(0.0, (3 * p - 1) / 2)));
  }
  std::mt19937_64 gen(derive_seed(kSeed, {11}));
  double lu = 0.0;
  for (int t = 0; t < 200; ++t) {
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    for (int k = 0; k <= t % 4; ++k) {
      const Eigen::Vector4cd v = oracle::random_state(4, gen);
      rho += (k + 1.0) * v * v.adjoint();
    }
    rho /= rho.trace();
    const Eigen::MatrixXcd a = oracle::random_unitary(2, gen), b = oracle::random_unitary(2, gen);
    const Eigen::Matrix4cd u = Eigen::kroneckerProduct(a, b);
    lu = std::max(lu, std::abs(concurrence(u * rho * u.adjoint()) - concurrence(rho)));
  }
  return {worst <= 1e-10 && lu <= 1e-9,
          fmt("singlet/product/Werner max error %.1e (<= 1e-10); local-unitary invariance max change %.1e (<= 1e-9)",
              worst, lu)};
}

Outcome criterion_12() {
  const auto& r6 = recipe_pulse(6);
  const ChainSpec spec = ChainSpec::uniform(6);
  std::vector<double> kt;
  for (int i = 0; i <= 30; ++i) kt.push_back(0.05 * i);
  const auto thermal = sweep_thermal(r6.pulse, spec, kt);
  double rise = 0.0, plateau_lo = 1.0, plateau_hi = 0.0;
  for (std::size_t i = 0; i < thermal.points.size(); ++i) {
    const double c = thermal.points[i].concurrence;
    if (i > 0) rise = std::max(rise, c - thermal.points[i - 1].concurrence);
    if (thermal.points[i].parameter <= 0.2 + 1e-12) {
      plateau_lo = std::min(plateau_lo, c);
      plateau_hi = std::max(plateau_hi, c);
    }
  }
  const bool thermal_ok = rise <= 1e-9 && plateau_hi - plateau_lo < 0.02;

  const std::vector<double> xi = {0.0, 0.1, 0.2, 0.434, 0.7, 1.0, 2.0, 5.0};
  const auto leak = sweep_leakage(r6.pulse, spec, xi);
  double best_other = 0.0;
  for (std::size_t i = 1; i < leak.points.size(); ++i) best_other = std::max(best_other, leak.points[i].concurrence);
  const bool leak_ok = leak.points[0].concurrence >= best_other;

  const std::vector<double> gamma = {0.0, 1e-3, 3e-3, 1e-2, 3e-2, 0.1};
  const auto end = sweep_dephasing(r6.pulse, spec, gamma, DephasingModel::EndSpins);
  const auto all = sweep_dephasing(r6.pulse, spec, gamma, DephasingModel::AllSpins);
  double excess = -1.0;
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    excess = std::max(excess, all.points[i].concurrence - end.points[i].concurrence);
  }
  const bool deph_ok = excess <= 1e-6;
  return {thermal_ok && leak_ok && deph_ok,
          fmt("thermal N=6: largest rise %.1e, plateau variation on [0, 0.2] %.2e (< 0.02); leakage xi=0 %.5f vs "
              "best other %.5f; all-spins minus end-spins dephasing max %.2e (<= 1e-6)",
              rise, plateau_hi - plateau_lo, leak.points[0].concurrence, best_other, excess)};
}

const std::vector<std::pair<std::string, std::function<Outcome()>>>& criteria() {
  static const std::vector<std::pair<std::string, std::function<Outcome()>>> list = {
      {"N=4 entanglement generation", criterion_1},
      {"N=4 end-pair density pattern", criterion_2},
      {"controllability", criterion_3},
      {"thermal bound attainment", criterion_4},
      {"thermal bound limits", criterion_5},
      {"gradient oracle", criterion_6},
      {"excitation conservation", criterion_7},
      {"min-time trend", criterion_8},
      {"robustness ideal limits", criterion_9},
      {"disorder", criterion_10},
      {"concurrence oracle suite", criterion_11},
      {"sweep shape properties", criterion_12},
  };
  return list;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  if (selected.empty()) {
    for (int i = 1; i <= static_cast<int>(criteria().size()); ++i) selected.push_back(i);
  }
  bool all = true;
  for (const int k : selected) {
    if (k < 1 || k > static_cast<int>(criteria().size())) {
      std::fprintf(stderr, "unknown criterion %d\n", k);
      return 2;
    }
    const auto& [name, run] = criteria()[static_cast<std::size_t>(k - 1)];
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %2d %s: %s\n", o.pass ? "PASS" : "FAIL", k, name.c_str(), o.detail.c_str());
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}

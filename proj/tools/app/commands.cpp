#include "app/commands.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <map>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "app/artifacts.hpp"
#include "chainctl/controllability.hpp"
#include "chainctl/detail/parallel.hpp"
#include "chainctl/errors.hpp"
#include "chainctl/io.hpp"
#include "chainctl/metrics.hpp"
#include "chainctl/optimizer.hpp"
#include "chainctl/recipes.hpp"
#include "chainctl/rng.hpp"
#include "chainctl/robustness.hpp"

namespace chainctl::cli {

using nlohmann::json;

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {
      "optimize",        "evolve",          "sweep-thermal",   "sweep-leakage",
      "sweep-disorder",  "sweep-dephasing", "controllability", "min-time"};
  return names;
}

std::string command_description(const std::string& command) {
  static const std::map<std::string, std::string> text = {
      {"optimize", "optimize a pulse for end-to-end entanglement"},
      {"evolve", "replay a pulse file and write the trajectory"},
      {"sweep-thermal", "concurrence and bound versus temperature"},
      {"sweep-leakage", "concurrence versus control leakage length"},
      {"sweep-disorder", "Monte Carlo concurrence statistics versus coupling disorder"},
      {"sweep-dephasing", "concurrence versus dephasing rate"},
      {"controllability", "Lie algebra dimension and regularity criterion"},
      {"min-time", "critical duration per chain length and its N^2 fit"},
  };
  const auto it = text.find(command);
  return it == text.end() ? std::string() : it->second;
}

namespace {

struct Context {
  const RunConfig& cfg;
  std::ostream& log;
  std::string command;
  std::uint64_t seed = 0;
  int jobs = 1;
  bool csv = true;
  bool json_out = true;
  ArtifactSet artifacts;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  json provenance() const {
    return {{"version", kArtifactVersion},
            {"command", command},
            {"seed", seed},
            {"config_hash", sha256_hex(cfg.canonical())},
            {"config", cfg.semantic()}};
  }
};

int require_int(const RunConfig& cfg, const std::string& key, long long lo, long long hi) {
  const auto v = cfg.get_int(key);
  if (!v) cfg.fail(key, "'" + key + "' is required");
  if (*v < lo || *v > hi) {
    cfg.fail(key, "'" + key + "' = " + std::to_string(*v) + " must lie in [" + std::to_string(lo) +
                      ", " + std::to_string(hi) + "]");
  }
  return static_cast<int>(*v);
}

double positive(const RunConfig& cfg, const std::string& key, double fallback) {
  const double v = cfg.get_double(key).value_or(fallback);
  if (!(v > 0.0) || !std::isfinite(v)) cfg.fail(key, "'" + key + "' must be positive");
  return v;
}

ChainSpec chain_from(const RunConfig& cfg, std::optional<int> spins_default = std::nullopt,
                     std::optional<double> coupling_default = std::nullopt) {
  ChainSpec spec;
  if (!cfg.has("N") && spins_default) {
    spec.spins = *spins_default;
  } else {
    spec.spins = require_int(cfg, "N", 2, kMaxSpins);
  }
  spec.coupling = positive(cfg, "J", coupling_default.value_or(1.0));
  if (const auto eps = cfg.get_doubles("bond_offsets")) {
    if (!eps->empty() && eps->size() != static_cast<std::size_t>(spec.spins - 1)) {
      cfg.fail("bond_offsets", "'bond_offsets' needs N - 1 = " + std::to_string(spec.spins - 1) + " values");
    }
    for (const double e : *eps) {
      if (!(std::abs(e) <= 1.0)) cfg.fail("bond_offsets", "bond offsets must lie in [-1, 1]");
    }
    spec.bond_offsets = *eps;
  }
  spec.leakage = cfg.get_double("xi").value_or(0.0);
  if (!(spec.leakage >= 0.0)) cfg.fail("xi", "'xi' must be non-negative");
  return spec;
}

int subspace_from(const RunConfig& cfg, const ChainSpec& spec) {
  if (!cfg.has("n")) return spec.largest_subspace();
  const long long n = *cfg.get_int("n");
  if (n < 1 || n > spec.spins - 1) {
    cfg.fail("n", "n = " + std::to_string(n) + " is outside [1, N - 1] for N = " + std::to_string(spec.spins));
  }
  return static_cast<int>(n);
}

struct PulseShape {
  std::size_t steps;
  double duration;
};

PulseShape shape_from(const RunConfig& cfg, int spins) {
  const long long p = cfg.get_int("p").value_or(static_cast<long long>(kRecipeSteps));
  if (p < 1) cfg.fail("p", "'p' must be at least 1");
  const auto steps = static_cast<std::size_t>(p);
  const auto t_f = cfg.get_double("t_f");
  const auto dt = cfg.get_double("dt");
  if (t_f && !(*t_f > 0.0)) cfg.fail("t_f", "'t_f' must be positive");
  if (dt && !(*dt > 0.0)) cfg.fail("dt", "'dt' must be positive");
  if (t_f && dt && std::abs(*t_f - static_cast<double>(steps) * *dt) > 1e-12 * std::max(1.0, *t_f)) {
    cfg.fail("t_f", "'t_f' differs from p * dt");
  }
  if (t_f) return {steps, *t_f};
  if (dt) return {steps, static_cast<double>(steps) * *dt};
  return {steps, recipe_duration(spins)};
}

std::optional<double> bound_from(const RunConfig& cfg) {
  if (!cfg.has("bound")) return std::nullopt;
  return positive(cfg, "bound", 1.0);
}

OptimizerOptions optimizer_from(const RunConfig& cfg) {
  OptimizerOptions o;
  o.max_iterations = static_cast<int>(cfg.get_int("max_iterations").value_or(o.max_iterations));
  if (o.max_iterations < 0) cfg.fail("max_iterations", "'max_iterations' must be non-negative");
  o.gradient_tol = positive(cfg, "gradient_tol", o.gradient_tol);
  o.fidelity_change_tol = positive(cfg, "fidelity_change_tol", o.fidelity_change_tol);
  o.bound = bound_from(cfg);
  return o;
}

int restarts_from(const RunConfig& cfg) {
  const long long r = cfg.get_int("restarts").value_or(kRecipeRestarts);
  if (r < 1) cfg.fail("restarts", "'restarts' must be at least 1");
  return static_cast<int>(r);
}

Pulse initial_pulse(const RunConfig& cfg, const PulseShape& shape, std::uint64_t seed, int restart,
                    std::optional<double> bound) {
  const std::string init = cfg.get_string("init").value_or("random");
  const double base = cfg.get_double("init_base").value_or(0.1);
  const double noise = cfg.get_double("init_noise").value_or(0.05);
  if (!(noise >= 0.0)) cfg.fail("init_noise", "'init_noise' must be non-negative");
  if (init == "constant" && restart == 0) {
    Pulse p = Pulse::constant(shape.steps, shape.duration, base);
    p.bound = bound;
    if (bound) {
      for (double& b : p.amplitudes) b = std::clamp(b, -*bound, *bound);
    }
    return p;
  }
  if (init != "random" && init != "constant") cfg.fail("init", "'init' must be 'random' or 'constant'");
  return random_pulse(shape.steps, shape.duration, derive_seed(seed, {static_cast<std::uint64_t>(restart)}),
                      base, noise, bound);
}

PulseFile load_pulse(const RunConfig& cfg) {
  const auto path = cfg.get_string("pulse");
  if (!path) throw ConfigError("a pulse file is required ('pulse')");
  try {
    return pulse_from_json(read_file(*path));
  } catch (const FormatError& e) {
    throw ConfigError(*path + ": " + e.what());
  }
}

// Chain of a command that replays a stored pulse: N, J and n default to the
// pulse file and must agree with it when given.
ChainSpec chain_for_pulse(const RunConfig& cfg, const PulseFile& pf) {
  ChainSpec spec = chain_from(cfg, pf.spins, pf.coupling);
  if (spec.spins != pf.spins) {
    cfg.fail("N", "pulse file is for N = " + std::to_string(pf.spins) + ", config has N = " +
                      std::to_string(spec.spins));
  }
  if (std::abs(spec.coupling - pf.coupling) > 1e-12 * std::max(1.0, pf.coupling)) {
    cfg.fail("J", "pulse file was made for a different J");
  }
  if (cfg.has("n") && subspace_from(cfg, spec) != pf.excitations) {
    cfg.fail("n", "pulse file is for n = " + std::to_string(pf.excitations));
  }
  return spec;
}

std::vector<double> grid_from(const RunConfig& cfg) {
  const auto grid = cfg.get_doubles("grid");
  if (!grid) throw ConfigError("'grid' is required");
  if (grid->empty()) cfg.fail("grid", "'grid' is empty");
  for (const double v : *grid) {
    if (!(v >= 0.0) || !std::isfinite(v)) cfg.fail("grid", "grid values must be finite and non-negative");
  }
  return *grid;
}

json optimization_json(const OptimizationResult& r) {
  return {{"fidelity", r.fidelity},
          {"concurrence", r.concurrence},
          {"status", to_string(r.status)},
          {"iterations", r.iterations},
          {"evaluations", r.evaluations},
          {"gradient_norm", r.gradient_norm},
          {"diagnostics", r.diagnostics}};
}

std::string dump(const json& j) { return j.dump(1) + "\n"; }

// ---------------------------------------------------------------------------

int cmd_optimize(Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const ChainSpec spec = chain_from(cfg);
  const int n = subspace_from(cfg, spec);
  const PulseShape shape = shape_from(cfg, spec.spins);
  const OptimizerOptions options = optimizer_from(cfg);
  const int restarts = restarts_from(cfg);
  const std::optional<double> kT = cfg.get_double("kT");
  if (kT && !(*kT >= 0.0)) cfg.fail("kT", "'kT' must be non-negative");
  if (kT && cfg.has("n")) cfg.fail("n", "'n' cannot be combined with an ensemble ('kT')");

  std::optional<ControlProblem> problem;
  std::optional<double> bound_value;
  if (kT) {
    const ThermalState state = thermal_state(spec, *kT);
    bound_value = thermal_fidelity_bound(state);
    problem = ControlProblem::ensemble(spec, state);
  } else {
    const GroundState g = ground_state(build_h0(spec, n));
    if (g.degenerate) ctx.log << "notice: ground state of H_" << n << " is degenerate\n";
    problem = ControlProblem::pure(spec, {spec.spins, n, g.vector});
  }
  const double floor = cfg.get_double("fidelity_floor").value_or(bound_value ? *bound_value - 1e-3 : 0.99);

  std::vector<Pulse> inits;
  for (int r = 0; r < restarts; ++r) inits.push_back(initial_pulse(cfg, shape, ctx.seed, r, options.bound));
  std::vector<OptimizationResult> runs(inits.size());
  detail::parallel_for(inits.size(), ctx.jobs, [&](std::size_t r) {
    runs[r] = optimize_pulse(*problem, inits[r], options);
  });
  std::size_t best = 0;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    ctx.log << "restart " << r << ": fidelity " << runs[r].fidelity << ", concurrence "
            << runs[r].concurrence << ", " << to_string(runs[r].status) << "\n";
    if (runs[r].fidelity > runs[best].fidelity) best = r;
  }
  const OptimizationResult& res = runs[best];

  json opts = {{"max_iterations", options.max_iterations},
               {"gradient_tol", options.gradient_tol},
               {"fidelity_change_tol", options.fidelity_change_tol},
               {"restarts", restarts},
               {"best_restart", best},
               {"status", to_string(res.status)}};
  if (kT) opts["kT"] = *kT;
  if (spec.leakage > 0.0) opts["xi"] = spec.leakage;
  if (!spec.bond_offsets.empty()) opts["bond_offsets"] = spec.bond_offsets;
  PulseFile pf{spec.spins, spec.coupling, problem->excitations(), res.pulse,
               {ctx.seed, opts.dump(), res.fidelity, sha256_hex(cfg.canonical())}};
  ctx.artifacts.add("pulse.json", pulse_to_json(pf));
  if (ctx.csv) {
    ctx.artifacts.add("pulse.csv", pulse_to_csv(res.pulse));
    ctx.artifacts.add("trace.csv", trace_csv(res.trace));
  }

  json summary = {{"N", spec.spins},
                  {"J", spec.coupling},
                  {"n", problem->excitations()},
                  {"p", res.pulse.steps()},
                  {"t_f", res.pulse.duration()},
                  {"fidelity", res.fidelity},
                  {"concurrence", res.concurrence},
                  {"status", to_string(res.status)},
                  {"fidelity_floor", floor},
                  {"best_restart", best}};
  if (bound_value) summary["thermal_bound"] = *bound_value;
  json all = json::array();
  for (const auto& r : runs) all.push_back(optimization_json(r));
  summary["restarts"] = std::move(all);
  ctx.artifacts.add("summary.json", dump(summary));
  ctx.log << "wall time " << std::chrono::duration<double>(std::chrono::steady_clock::now() - ctx.start).count()
          << " s\n";

  const bool ok = res.status == OptimizationStatus::Converged && res.fidelity >= floor;
  if (!ok) {
    ctx.log << "fidelity floor " << floor << " missed: best fidelity " << res.fidelity << " ("
            << to_string(res.status) << ")\n";
  }
  return ok ? kExitOk : kExitFloorMissed;
}

int cmd_evolve(Context& ctx) {
  const PulseFile pf = load_pulse(ctx.cfg);
  const ChainSpec spec = chain_for_pulse(ctx.cfg, pf);
  const GroundState g = ground_state(build_h0(spec, pf.excitations));
  const PureState psi0{spec.spins, pf.excitations, g.vector};
  const ControlProblem problem = ControlProblem::pure(spec, psi0);
  const PureState fin = problem.final_pure_state(pf.pulse);

  ctx.artifacts.add("trajectory.csv", trajectory_csv(pf.pulse, spec, psi0));
  const json summary = {{"N", spec.spins},
                        {"J", spec.coupling},
                        {"n", pf.excitations},
                        {"fidelity", fidelity(fin)},
                        {"concurrence", concurrence(reduced_end_density(fin))}};
  ctx.artifacts.add("summary.json", dump(summary));
  return kExitOk;
}

Pulse sweep_pulse(Context& ctx, const ChainSpec*& spec_out, std::optional<ChainSpec>& holder, bool allow_fresh) {
  const RunConfig& cfg = ctx.cfg;
  if (cfg.has("pulse")) {
    const PulseFile pf = load_pulse(cfg);
    holder = chain_for_pulse(cfg, pf);
    spec_out = &*holder;
    return pf.pulse;
  }
  if (!allow_fresh) throw ConfigError("a pulse file is required ('pulse')");
  holder = chain_from(cfg);
  spec_out = &*holder;
  return initial_pulse(cfg, shape_from(cfg, holder->spins), ctx.seed, 0, bound_from(cfg));
}

void add_sweep(Context& ctx, const SweepResult& sweep) {
  json prov = ctx.provenance();
  if (const auto pulse = ctx.cfg.get_string("pulse")) {
    prov["pulse_file"] = *pulse;
    prov["pulse_sha256"] = sha256_hex(read_file(*pulse));
  }
  const std::string js = sweep_to_json(sweep, prov.dump());
  const std::string stem =
      to_string(sweep.kind) + "_N" + std::to_string(sweep.spins) + "_" + sha256_hex(js).substr(0, 12);
  if (ctx.csv) ctx.artifacts.add(stem + ".csv", sweep_to_csv(sweep));
  if (ctx.json_out) ctx.artifacts.add(stem + ".json", js);
  for (const auto& p : sweep.points) {
    ctx.log << to_string(sweep.kind) << " " << p.parameter << ": concurrence " << p.concurrence;
    if (p.bound) ctx.log << " fidelity " << p.fidelity.value_or(0.0) << " bound " << *p.bound;
    if (sweep.kind == SweepKind::Disorder) {
      ctx.log << " stderr " << p.stderr_mean << " (" << p.samples << " samples, " << p.excluded
              << " excluded)";
    }
    ctx.log << "\n";
  }
}

ReoptimizeOptions reopt_from(const RunConfig& cfg) {
  ReoptimizeOptions r;
  r.enabled = cfg.get_bool("reoptimize").value_or(false);
  r.optimizer = optimizer_from(cfg);
  return r;
}

int cmd_sweep_thermal(Context& ctx) {
  const ChainSpec* spec = nullptr;
  std::optional<ChainSpec> holder;
  const Pulse pulse = sweep_pulse(ctx, spec, holder, false);
  add_sweep(ctx, sweep_thermal(pulse, *spec, grid_from(ctx.cfg)));
  return kExitOk;
}

int cmd_sweep_leakage(Context& ctx) {
  const ReoptimizeOptions reopt = reopt_from(ctx.cfg);
  const ChainSpec* spec = nullptr;
  std::optional<ChainSpec> holder;
  const Pulse pulse = sweep_pulse(ctx, spec, holder, reopt.enabled);
  add_sweep(ctx, sweep_leakage(pulse, *spec, grid_from(ctx.cfg), reopt, ctx.jobs));
  return kExitOk;
}

int cmd_sweep_disorder(Context& ctx) {
  const ReoptimizeOptions reopt = reopt_from(ctx.cfg);
  const ChainSpec* spec = nullptr;
  std::optional<ChainSpec> holder;
  const Pulse pulse = sweep_pulse(ctx, spec, holder, reopt.enabled);
  const std::vector<double> grid = grid_from(ctx.cfg);
  for (const double a : grid) {
    if (a > 1.0) ctx.cfg.fail("grid", "disorder strengths must lie in [0, 1]");
  }
  const long long samples = ctx.cfg.get_int("samples").value_or(100);
  if (samples < 1) ctx.cfg.fail("samples", "'samples' must be at least 1");
  add_sweep(ctx, sweep_disorder(pulse, *spec, grid, static_cast<std::size_t>(samples), ctx.seed, reopt,
                                ctx.jobs));
  return kExitOk;
}

int cmd_sweep_dephasing(Context& ctx) {
  const ChainSpec* spec = nullptr;
  std::optional<ChainSpec> holder;
  const Pulse pulse = sweep_pulse(ctx, spec, holder, false);
  const std::string model = ctx.cfg.get_string("model").value_or("end_spins");
  if (model != "end_spins" && model != "all_spins") {
    ctx.cfg.fail("model", "'model' must be 'end_spins' or 'all_spins'");
  }
  const double tol = positive(ctx.cfg, "lindblad_tol", 1e-6);
  add_sweep(ctx, sweep_dephasing(pulse, *spec, grid_from(ctx.cfg),
                                 model == "end_spins" ? DephasingModel::EndSpins : DephasingModel::AllSpins,
                                 tol, ctx.jobs));
  return kExitOk;
}

HermitianOperator load_operator(const RunConfig& cfg, const std::string& key) {
  const std::string path = *cfg.get_string(key);
  try {
    return operator_from_json(read_file(path));
  } catch (const FormatError& e) {
    throw ConfigError(path + ": " + e.what());
  } catch (const DomainError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

int cmd_controllability(Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  std::optional<HermitianOperator> h0, h1;
  if (cfg.has("h0") || cfg.has("h1")) {
    if (!cfg.has("h0") || !cfg.has("h1")) throw ConfigError("'h0' and 'h1' must be given together");
    h0 = load_operator(cfg, "h0");
    h1 = load_operator(cfg, "h1");
    if (!(h0->basis() == h1->basis())) throw ConfigError("'h0' and 'h1' live on different subspaces");
  } else {
    const ChainSpec spec = chain_from(cfg);
    const int n = subspace_from(cfg, spec);
    h0 = build_h0(spec, n);
    h1 = build_h1(spec, n);
    if (cfg.get_bool("export_operators").value_or(false)) {
      ctx.artifacts.add("h0.json", operator_to_json(*h0));
      ctx.artifacts.add("h1.json", operator_to_json(*h1));
    }
  }
  const double lie_tol = positive(cfg, "lie_tol", 1e-9);
  const double reg_tol = positive(cfg, "regularity_tol", 1e-8);
  const long long max_dim = cfg.get_int("max_lie_dim").value_or(40);

  std::optional<LieAlgebraReport> lie;
  if (h0->dim() <= max_dim) {
    lie = dynamical_lie_dimension(*h0, *h1, lie_tol);
    ctx.log << "Lie algebra dimension " << lie->dimension << " (M^2 = " << h0->dim() * h0->dim() << ")\n";
  } else {
    ctx.log << "notice: subspace dimension " << h0->dim() << " exceeds max_lie_dim = " << max_dim
            << "; Lie closure skipped, regularity report only\n";
  }
  const RegularityReport reg = strongly_regular_connected_check(*h0, *h1, reg_tol);
  ctx.log << "effectively strongly regular: " << std::boolalpha << reg.effectively_strongly_regular
          << ", connected: " << reg.connected << "\n";
  ctx.artifacts.add("controllability.json", controllability_to_json(lie, reg));
  return kExitOk;
}

int cmd_min_time(Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  std::vector<int> chains;
  if (const auto list = cfg.get_ints("N_list")) {
    chains = *list;
  } else {
    chains = {require_int(cfg, "N", 2, kMaxSpins)};
  }
  if (chains.empty()) cfg.fail("N_list", "'N_list' is empty");
  for (const int n : chains) {
    if (n < 2 || n > kMaxSpins) cfg.fail("N_list", "chain lengths must lie in [2, 24]");
  }
  const double threshold = cfg.get_double("threshold").value_or(0.99);
  if (!(threshold > 0.0 && threshold < 1.0)) cfg.fail("threshold", "'threshold' must lie in (0, 1)");

  std::vector<double> durations;
  if (const auto d = cfg.get_doubles("durations")) {
    durations = *d;
  } else {
    if (!cfg.has("t_min") || !cfg.has("t_max") || !cfg.has("t_step")) {
      throw ConfigError("min-time needs 'durations' or all of 't_min', 't_max', 't_step'");
    }
    const double lo = positive(cfg, "t_min", 1.0), hi = positive(cfg, "t_max", 1.0);
    const double step = positive(cfg, "t_step", 1.0);
    if (hi < lo) cfg.fail("t_max", "'t_max' is below 't_min'");
    for (long long k = 0; lo + static_cast<double>(k) * step <= hi + 1e-9 * step; ++k) {
      durations.push_back(lo + static_cast<double>(k) * step);
    }
  }
  if (durations.empty()) cfg.fail("durations", "'durations' is empty");
  for (std::size_t i = 0; i < durations.size(); ++i) {
    if (!(durations[i] > 0.0) || (i > 0 && !(durations[i] > durations[i - 1]))) {
      cfg.fail("durations", "durations must be positive and strictly ascending");
    }
  }

  MinTimeOptions mt;
  const long long p = cfg.get_int("p").value_or(static_cast<long long>(kRecipeSteps));
  if (p < 1) cfg.fail("p", "'p' must be at least 1");
  mt.steps = static_cast<std::size_t>(p);
  mt.restarts = restarts_from(cfg);
  mt.init_base = cfg.get_double("init_base").value_or(mt.init_base);
  mt.init_noise = cfg.get_double("init_noise").value_or(mt.init_noise);
  mt.optimizer = optimizer_from(cfg);
  mt.optimizer.target_fidelity = threshold;
  mt.jobs = ctx.jobs;
  mt.stop_at_critical = cfg.get_bool("stop_at_critical").value_or(false);
  const double coupling = positive(cfg, "J", 1.0);

  std::ostringstream summary;
  summary << "N,N2,T_C\n";
  std::vector<double> xs, ys;
  json per_chain = json::array();
  for (const int n : chains) {
    mt.seed = derive_seed(ctx.seed, {static_cast<std::uint64_t>(n)});
    const ControlProblem problem = ControlProblem::ground_state(ChainSpec::uniform(n, coupling));
    const MinTimeResult r = min_time_scan(problem, threshold, durations, mt);

    std::ostringstream table;
    table << "duration,best_fidelity";
    for (int k = 0; k < mt.restarts; ++k) table << ",restart_" << k;
    table << "\n";
    table.precision(17);
    for (const auto& row : r.table) {
      table << row.duration << ',' << row.best_fidelity;
      for (const double f : row.restart_fidelities) table << ',' << f;
      table << "\n";
    }
    if (ctx.csv) ctx.artifacts.add("min_time_N" + std::to_string(n) + ".csv", table.str());

    summary.precision(17);
    summary << n << ',' << n * n << ',';
    if (r.critical_time) {
      summary << *r.critical_time;
      xs.push_back(static_cast<double>(n * n));
      ys.push_back(*r.critical_time);
    }
    summary << "\n";
    ctx.log << "N = " << n << ": T_C = ";
    if (r.critical_time) {
      ctx.log << *r.critical_time << "\n";
    } else {
      ctx.log << "not reached on the grid\n";
    }
    per_chain.push_back({{"N", n}, {"T_C", r.critical_time ? json(*r.critical_time) : json(nullptr)}});
  }
  if (ctx.csv) ctx.artifacts.add("min_time_summary.csv", summary.str());

  json fit_json = {{"threshold", threshold}, {"chains", std::move(per_chain)}};
  if (xs.size() >= 2) {
    const LinearFit fit = fit_line(xs, ys);
    fit_json["fit"] = {{"model", "T_C = a + b N^2"},
                       {"a", fit.intercept},
                       {"b", fit.slope},
                       {"r_squared", fit.r_squared}};
    ctx.log << "fit T_C = " << fit.intercept << " + " << fit.slope << " N^2, R^2 = " << fit.r_squared << "\n";
  } else {
    fit_json["fit"] = nullptr;
    fit_json["notice"] = "fewer than two chain lengths with a critical time; fit skipped";
    ctx.log << "notice: fewer than two chain lengths with a critical time; fit skipped\n";
  }
  if (ctx.json_out) ctx.artifacts.add("min_time_fit.json", dump(fit_json));
  return kExitOk;
}

}  // namespace

int run_command(const std::string& command, const RunConfig& cfg, std::ostream& log) {
  const std::string out = cfg.get_string("out").value_or("out");
  Context ctx{cfg, log, command, 0, 1, true, true, ArtifactSet(out)};

  if (const auto s = cfg.get_uint("seed")) {
    ctx.seed = *s;
  } else {
    ctx.seed = (static_cast<std::uint64_t>(std::random_device{}()) << 32) ^ std::random_device{}();
    log << "seed not given; using generated seed " << ctx.seed << "\n";
  }
  const long long jobs = cfg.get_int("jobs").value_or(1);
  if (jobs < 1) cfg.fail("jobs", "'jobs' must be at least 1");
  ctx.jobs = static_cast<int>(jobs);
  const std::string format = cfg.get_string("format").value_or("both");
  if (format != "csv" && format != "json" && format != "both") {
    cfg.fail("format", "'format' must be csv, json or both");
  }
  ctx.csv = format != "json";
  ctx.json_out = format != "csv";

  int status = kExitOk;
  if (command == "optimize") {
    status = cmd_optimize(ctx);
  } else if (command == "evolve") {
    status = cmd_evolve(ctx);
  } else if (command == "sweep-thermal") {
    status = cmd_sweep_thermal(ctx);
  } else if (command == "sweep-leakage") {
    status = cmd_sweep_leakage(ctx);
  } else if (command == "sweep-disorder") {
    status = cmd_sweep_disorder(ctx);
  } else if (command == "sweep-dephasing") {
    status = cmd_sweep_dephasing(ctx);
  } else if (command == "controllability") {
    status = cmd_controllability(ctx);
  } else if (command == "min-time") {
    status = cmd_min_time(ctx);
  } else {
    throw ConfigError("unknown command '" + command + "'");
  }

  json prov = ctx.provenance();
  prov["exit_status"] = status;
  ctx.artifacts.commit(prov.dump());
  log << "wrote " << ctx.artifacts.names().size() + 1 << " files to " << ctx.artifacts.dir().string() << "\n";
  return status;
}

}  // namespace chainctl::cli

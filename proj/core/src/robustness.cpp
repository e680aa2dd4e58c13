#include "chainctl/robustness.hpp"

#include <cmath>
#include <numeric>

#include "chainctl/detail/parallel.hpp"
#include "chainctl/errors.hpp"
#include "chainctl/metrics.hpp"
#include "chainctl/rng.hpp"

namespace chainctl {

std::string to_string(SweepKind kind) {
  switch (kind) {
    case SweepKind::Thermal:
      return "thermal";
    case SweepKind::Leakage:
      return "leakage";
    case SweepKind::Disorder:
      return "disorder";
    case SweepKind::Dephasing:
      return "dephasing";
  }
  return "unknown";
}

std::vector<double> SweepResult::grid() const {
  std::vector<double> out;
  for (const auto& p : points) out.push_back(p.parameter);
  return out;
}

std::vector<double> SweepResult::concurrences() const {
  std::vector<double> out;
  for (const auto& p : points) out.push_back(p.concurrence);
  return out;
}

namespace {

void check_grid(std::span<const double> grid, const char* what) {
  if (grid.empty()) throw DomainError(std::string(what) + " grid is empty");
  for (const double v : grid) {
    if (!std::isfinite(v) || v < 0.0) {
      throw DomainError(std::string(what) + " grid values must be finite and non-negative");
    }
  }
}

void check_pulse(const Pulse& pulse) {
  if (pulse.amplitudes.empty()) throw DomainError("pulse has no steps");
  pulse.validate();
}

struct Evaluated {
  double concurrence;
  double fidelity;
};

Evaluated evaluate(const ControlProblem& problem, const Pulse& pulse, const ReoptimizeOptions& reopt) {
  if (reopt.enabled) {
    const OptimizationResult r = optimize_pulse(problem, pulse, reopt.optimizer);
    return {r.concurrence, r.fidelity};
  }
  const PureState psi = problem.final_pure_state(pulse);
  return {concurrence(reduced_end_density(psi)), fidelity(psi)};
}

}  // namespace

SweepResult sweep_thermal(const Pulse& pulse, const ChainSpec& spec, std::span<const double> kT_grid) {
  spec.validate();
  check_pulse(pulse);
  check_grid(kT_grid, "temperature");
  const double drop = spec.spins >= 8 ? 1e-12 : 0.0;

  std::vector<int> all(static_cast<std::size_t>(spec.spins + 1));
  std::iota(all.begin(), all.end(), 0);
  const std::vector<Eigen::MatrixXcd> props = block_propagators(pulse, spec, all);

  SweepResult out;
  out.kind = SweepKind::Thermal;
  out.spins = spec.spins;
  for (const double kT : kT_grid) {
    const ThermalState state = thermal_state(spec, kT, drop);
    BlockDensity rho;
    rho.spins = spec.spins;
    for (const auto& b : state.blocks) {
      const Eigen::MatrixXcd x = props[static_cast<std::size_t>(b.excitations)] * b.eigenvectors *
                                 b.weights.cwiseSqrt().cast<std::complex<double>>().asDiagonal();
      rho.blocks.push_back({b.excitations, x * x.adjoint()});
    }
    SweepPoint p;
    p.parameter = kT;
    p.concurrence = concurrence(reduced_end_density(rho));
    p.fidelity = fidelity(rho);
    p.bound = thermal_fidelity_bound(state);
    out.points.push_back(std::move(p));
  }
  return out;
}

SweepResult sweep_leakage(const Pulse& pulse, const ChainSpec& spec, std::span<const double> xi_grid,
                          const ReoptimizeOptions& reopt, int jobs) {
  spec.validate();
  check_pulse(pulse);
  check_grid(xi_grid, "leakage");
  const PureState psi0 = chain_ground_state(spec);

  SweepResult out;
  out.kind = SweepKind::Leakage;
  out.spins = spec.spins;
  out.reoptimized = reopt.enabled;
  out.points.resize(xi_grid.size());
  detail::parallel_for(xi_grid.size(), jobs, [&](std::size_t i) {
    ChainSpec leaky = spec;
    leaky.leakage = xi_grid[i];
    const Evaluated e = evaluate(ControlProblem::pure(leaky, psi0), pulse, reopt);
    SweepPoint& p = out.points[i];
    p.parameter = xi_grid[i];
    p.concurrence = e.concurrence;
    p.fidelity = e.fidelity;
  });
  return out;
}

SweepResult sweep_disorder(const Pulse& pulse, const ChainSpec& spec,
                           std::span<const double> alpha_grid, std::size_t samples,
                           std::uint64_t seed, const ReoptimizeOptions& reopt, int jobs) {
  spec.validate();
  check_pulse(pulse);
  check_grid(alpha_grid, "disorder");
  if (samples < 1) throw DomainError("disorder sweep needs at least one sample");

  struct Sample {
    bool excluded = false;
    Evaluated value{};
  };
  const std::size_t tasks = alpha_grid.size() * samples;
  std::vector<Sample> results(tasks);
  const int n = spec.largest_subspace();
  detail::parallel_for(tasks, jobs, [&](std::size_t t) {
    const std::size_t i = t / samples, s = t % samples;
    ChainSpec disordered = spec;
    disordered.bond_offsets = sample_disorder(spec.spins, alpha_grid[i], derive_seed(seed, {i, s}));
    const GroundState g = ground_state(build_h0(disordered, n));
    if (g.degenerate) {
      results[t].excluded = true;
      return;
    }
    const ControlProblem problem = ControlProblem::pure(disordered, {spec.spins, n, g.vector});
    results[t].value = evaluate(problem, pulse, reopt);
  });

  SweepResult out;
  out.kind = SweepKind::Disorder;
  out.spins = spec.spins;
  out.seed = seed;
  out.reoptimized = reopt.enabled;
  for (std::size_t i = 0; i < alpha_grid.size(); ++i) {
    SweepPoint p;
    p.parameter = alpha_grid[i];
    double fsum = 0.0;
    for (std::size_t s = 0; s < samples; ++s) {
      const Sample& r = results[i * samples + s];
      if (r.excluded) {
        ++p.excluded;
        continue;
      }
      p.sample_concurrence.push_back(r.value.concurrence);
      fsum += r.value.fidelity;
    }
    p.samples = p.sample_concurrence.size();
    if (p.samples > 0) {
      const auto k = static_cast<double>(p.samples);
      const double mean = std::accumulate(p.sample_concurrence.begin(), p.sample_concurrence.end(), 0.0) / k;
      double ss = 0.0;
      for (const double c : p.sample_concurrence) ss += (c - mean) * (c - mean);
      p.concurrence = mean;
      p.fidelity = fsum / k;
      p.stddev = p.samples > 1 ? std::sqrt(ss / (k - 1.0)) : 0.0;
      p.stderr_mean = p.stddev / std::sqrt(k);
    }
    out.points.push_back(std::move(p));
  }
  return out;
}

SweepResult sweep_dephasing(const Pulse& pulse, const ChainSpec& spec,
                            std::span<const double> gamma_grid, DephasingModel model, double tol,
                            int jobs) {
  spec.validate();
  check_pulse(pulse);
  check_grid(gamma_grid, "dephasing");
  const PureState psi0 = chain_ground_state(spec);
  const DensityBlock rho0{psi0.excitations, psi0.amplitudes * psi0.amplitudes.adjoint()};

  SweepResult out;
  out.kind = SweepKind::Dephasing;
  out.spins = spec.spins;
  out.model = model == DephasingModel::EndSpins ? "end_spins" : "all_spins";
  out.points.resize(gamma_grid.size());
  detail::parallel_for(gamma_grid.size(), jobs, [&](std::size_t i) {
    const LindbladRun run = evolve_lindblad_converged(pulse, rho0, {gamma_grid[i], model}, spec, tol);
    BlockDensity rho;
    rho.spins = spec.spins;
    rho.blocks.push_back(run.final_state);
    SweepPoint& p = out.points[i];
    p.parameter = gamma_grid[i];
    p.concurrence = concurrence(reduced_end_density(rho));
    p.fidelity = fidelity(rho);
    p.lindblad_substeps = run.substeps;
  });
  return out;
}

}  // namespace chainctl

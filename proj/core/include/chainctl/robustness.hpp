#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chainctl/hamiltonians.hpp"
#include "chainctl/optimizer.hpp"
#include "chainctl/propagation.hpp"
#include "chainctl/pulse.hpp"

namespace chainctl {

enum class SweepKind { Thermal, Leakage, Disorder, Dephasing };

std::string to_string(SweepKind kind);

struct SweepPoint {
  double parameter = 0.0;            // kT/J, xi, alpha or gamma/J
  double concurrence = 0.0;          // mean over samples for disorder
  std::optional<double> fidelity;    // Tr[A rho]; mean over samples for disorder
  std::optional<double> bound;       // thermal only
  double stddev = 0.0;               // sample standard deviation (disorder)
  double stderr_mean = 0.0;          // stddev / sqrt(samples)
  std::size_t samples = 1;
  std::size_t excluded = 0;          // disorder samples with a degenerate ground state
  std::vector<double> sample_concurrence;  // disorder only, in sample order
  int lindblad_substeps = 0;         // dephasing only
};

struct SweepResult {
  SweepKind kind = SweepKind::Thermal;
  int spins = 0;
  std::vector<SweepPoint> points;
  std::optional<std::uint64_t> seed;  // disorder master seed
  bool reoptimized = false;
  std::string model;  // dephasing model name

  std::vector<double> grid() const;
  std::vector<double> concurrences() const;
};

/// Blockwise unitary evolution of the thermal state at each kT; blocks with
/// total weight below 1e-12 are skipped for N >= 8.
SweepResult sweep_thermal(const Pulse& pulse, const ChainSpec& spec, std::span<const double> kT_grid);

struct ReoptimizeOptions {
  bool enabled = false;
  OptimizerOptions optimizer;
};

/// Ground-state evolution with the leaky control operator for each xi. With
/// reoptimisation the pulse is first optimised against that operator,
/// starting from `pulse`.
SweepResult sweep_leakage(const Pulse& pulse, const ChainSpec& spec, std::span<const double> xi_grid,
                          const ReoptimizeOptions& reopt = {}, int jobs = 1);

/// Monte Carlo over bond offsets drawn from [-alpha, alpha]. Each sample
/// starts in the ground state of its own perturbed drift; the stream seed of
/// sample s at grid index i is derive_seed(seed, {i, s}).
SweepResult sweep_disorder(const Pulse& pulse, const ChainSpec& spec,
                           std::span<const double> alpha_grid, std::size_t samples,
                           std::uint64_t seed, const ReoptimizeOptions& reopt = {}, int jobs = 1);

/// Lindblad evolution of the ground state with Z dephasing at each gamma.
SweepResult sweep_dephasing(const Pulse& pulse, const ChainSpec& spec,
                            std::span<const double> gamma_grid, DephasingModel model,
                            double tol = 1e-6, int jobs = 1);

}  // namespace chainctl

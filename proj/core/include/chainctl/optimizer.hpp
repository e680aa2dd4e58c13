#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "chainctl/hamiltonians.hpp"
#include "chainctl/operator.hpp"
#include "chainctl/pulse.hpp"
#include "chainctl/state.hpp"

namespace chainctl {

enum class ObjectiveKind { PureFidelity, EnsembleFidelity };

/// One excitation block of a control problem: its drift, control and target
/// operators plus the weighted pure components of the initial state.
struct ControlBlock {
  int excitations;
  HermitianOperator drift;    // H0 restricted to the block, without J
  HermitianOperator control;  // H1 (or the leaky variant)
  HermitianOperator target;   // singlet projector A
  Eigen::MatrixXcd states;    // initial components as columns
  Eigen::VectorXd weights;    // one per column
};

/// Maximise K = sum_blocks sum_c w_c <psi_c(t_f)| A |psi_c(t_f)> over the
/// pulse amplitudes. A pure problem has one block with a single component.
class ControlProblem {
 public:
  static ControlProblem pure(const ChainSpec& spec, const PureState& psi0);
  /// Pure problem starting from the ground state of J*H0 (with the spec's
  /// bond offsets) in the largest excitation subspace.
  static ControlProblem ground_state(const ChainSpec& spec);
  /// Ensemble problem; components with weight below `min_weight` are dropped.
  static ControlProblem ensemble(const ChainSpec& spec, const ThermalState& state,
                                 double min_weight = 1e-14);

  const ChainSpec& spec() const { return spec_; }
  ObjectiveKind kind() const { return kind_; }
  /// Subspace of the pure initial state, or the largest subspace for ensembles.
  int excitations() const { return excitations_; }
  const std::vector<ControlBlock>& blocks() const { return blocks_; }

  /// Final state U rho(0) U^dagger as a block density.
  BlockDensity final_state(const Pulse& pulse) const;
  /// Final pure state; only for PureFidelity problems.
  PureState final_pure_state(const Pulse& pulse) const;

 private:
  ControlProblem(ChainSpec spec, ObjectiveKind kind, int excitations)
      : spec_(std::move(spec)), kind_(kind), excitations_(excitations) {}

  ChainSpec spec_;
  ObjectiveKind kind_;
  int excitations_;
  std::vector<ControlBlock> blocks_;
};

struct ObjectiveValue {
  double value = 0.0;
  std::vector<double> gradient;  // dK/dB_m, exact
};

/// K and its exact gradient: each step derivative uses the spectral Frechet
/// derivative of exp(-i(J H0 + B_m H1) dt), not a first-order approximation.
ObjectiveValue objective_and_gradient(const Pulse& pulse, const ControlProblem& problem);

/// K alone (forward propagation only).
double objective(const Pulse& pulse, const ControlProblem& problem);

/// End-pair concurrence of the final state.
double final_concurrence(const Pulse& pulse, const ControlProblem& problem);

struct OptimizerOptions {
  int max_iterations = 5000;
  double gradient_tol = 1e-8;          // on the projected gradient norm
  double fidelity_change_tol = 1e-10;  // per accepted iteration
  std::optional<double> bound;         // |B_m| <= bound
  std::optional<double> target_fidelity;  // stop as soon as K reaches it
};

enum class OptimizationStatus { Converged, Stalled, IterationLimit };

std::string to_string(OptimizationStatus status);

struct OptimizationResult {
  Pulse pulse;
  double fidelity = 0.0;
  double concurrence = 0.0;
  int iterations = 0;
  int evaluations = 0;
  double gradient_norm = 0.0;
  OptimizationStatus status = OptimizationStatus::Stalled;
  std::vector<double> trace;  // K after each accepted iterate, starting at the initial pulse
  std::string diagnostics;
};

/// Quasi-Newton (BFGS) ascent on K. Without a bound the step satisfies the
/// strong Wolfe conditions; with a bound the iteration is a projected BFGS
/// with an active set of bound-touching coordinates. Every accepted iterate
/// strictly increases K.
OptimizationResult optimize_pulse(const ControlProblem& problem, const Pulse& init,
                                  const OptimizerOptions& options = {});

// ---------------------------------------------------------------------------
// Minimum-time scan

struct MinTimeOptions {
  std::size_t steps = 64;
  int restarts = 5;
  std::uint64_t seed = 0;
  double init_base = 0.1;
  double init_noise = 0.05;
  OptimizerOptions optimizer;
  int jobs = 1;
  /// Skip the durations after the first one reaching the threshold.
  bool stop_at_critical = false;
};

struct MinTimeRow {
  double duration = 0.0;
  double best_fidelity = 0.0;
  std::vector<double> restart_fidelities;
  std::vector<OptimizationStatus> restart_status;
  std::size_t best_restart = 0;
};

struct MinTimeResult {
  std::optional<double> critical_time;  // smallest duration reaching the threshold
  double threshold = 0.0;
  std::vector<MinTimeRow> table;
  std::vector<Pulse> best_pulses;  // one per row
};

/// For every duration runs `restarts` optimizations from seeded random
/// pulses (stream seed derived from (seed, duration index, restart index)) and
/// reports the best fidelity per duration.
MinTimeResult min_time_scan(const ControlProblem& problem, double threshold,
                            std::span<const double> durations, const MinTimeOptions& options = {});

/// Least-squares fit of y = a + b x with its coefficient of determination.
struct LinearFit {
  double intercept = 0.0;
  double slope = 0.0;
  double r_squared = 0.0;
};
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace chainctl

#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "chainctl/hamiltonians.hpp"
#include "chainctl/linalg.hpp"
#include "chainctl/operator.hpp"
#include "chainctl/pulse.hpp"
#include "chainctl/state.hpp"

namespace chainctl {

/// exp(-i (J h0 + B h1) dt) for one pulse step.
struct Propagator {
  Eigen::MatrixXcd unitary;
  double field = 0.0;
  double dt = 0.0;
  double coupling = 1.0;
};

Propagator step_propagator(const HermitianOperator& h0, const HermitianOperator& h1,
                           double coupling, double field, double dt);

struct PureEvolution {
  Eigen::VectorXcd final_state;
  /// States at t = 0, dt, ..., p*dt when requested; empty otherwise.
  std::vector<Eigen::VectorXcd> trajectory;
};

/// U(B_p) ... U(B_1) psi0. Throws DimensionMismatch if psi0 does not live in
/// the operator subspace and DomainError if it is not normalised.
PureEvolution evolve_pure(const Pulse& pulse, const Eigen::VectorXcd& psi0,
                          const HermitianOperator& h0, const HermitianOperator& h1,
                          double coupling, bool record_trajectory = false);

/// Product U(B_p) ... U(B_1) on one subspace.
Eigen::MatrixXcd pulse_propagator(const Pulse& pulse, const HermitianOperator& h0,
                                  const HermitianOperator& h1, double coupling);

/// Total propagators for every excitation block listed in `excitations`,
/// built from the drift and (possibly leaky) control of `spec`.
std::vector<Eigen::MatrixXcd> block_propagators(const Pulse& pulse, const ChainSpec& spec,
                                                const std::vector<int>& excitations);

/// Conjugates each block of `state` by its subspace propagator.
BlockDensity evolve_density_unitary(const Pulse& pulse, const BlockDensity& state,
                                    const ChainSpec& spec);
BlockDensity evolve_density_unitary(const Pulse& pulse, const ThermalState& state,
                                    const ChainSpec& spec);

// ---------------------------------------------------------------------------
// Lindblad dephasing

enum class DephasingModel {
  EndSpins,  // Z_1 and Z_N
  AllSpins,  // Z_1 ... Z_N
};

struct LindbladSpec {
  double gamma = 0.0;
  DephasingModel model = DephasingModel::EndSpins;
};

/// Elementwise rate matrix R with L(rho) = R o rho on H_n: the sum over
/// dephased spins k of -gamma (rho - Z_k rho Z_k).
Eigen::MatrixXd dephasing_rates(const SubspaceBasis& basis, const LindbladSpec& lind);

/// Fixed-step classical RK4 for drho/dt = -i[H(t), rho] + L(rho), with
/// `substeps` equal steps inside every constant-field pulse step.
DensityBlock evolve_lindblad(const Pulse& pulse, const DensityBlock& rho0, const LindbladSpec& lind,
                             const ChainSpec& spec, int substeps);

struct LindbladRun {
  DensityBlock final_state;
  int substeps = 0;
  double concurrence_change = 0.0;  // |C(2s) - C(s)| at the accepted s
};

/// Doubles the substep count, starting from a stability-based estimate, until
/// the final end-pair concurrence moves by less than `tol`. Throws
/// NumericalError carrying the achieved change after `max_doublings`.
LindbladRun evolve_lindblad_converged(const Pulse& pulse, const DensityBlock& rho0,
                                      const LindbladSpec& lind, const ChainSpec& spec,
                                      double tol = 1e-6, int max_doublings = 8);

}  // namespace chainctl

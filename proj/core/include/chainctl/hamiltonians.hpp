#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "chainctl/operator.hpp"
#include "chainctl/state.hpp"

namespace chainctl {

/// Physical description of a chain: N spins, mean coupling J (hbar = 1),
/// fractional per-bond offsets and the control-field leakage length xi.
struct ChainSpec {
  int spins = 4;
  double coupling = 1.0;
  std::vector<double> bond_offsets;  // empty means all zero
  double leakage = 0.0;

  static ChainSpec uniform(int spins, double coupling = 1.0);

  /// Throws DomainError on N outside [2, 24], J <= 0, |eps_k| > 1, xi < 0 or
  /// a bond_offsets list whose length is neither 0 nor N - 1.
  void validate() const;

  /// Relative strength 1 + eps_k of bond k (1-based, between spins k and k+1).
  double bond_strength(int bond) const;
  /// Weight of the control field on spin k (1-based): 1, exp(-(k-1)/xi), ...
  double field_weight(int site) const;
  /// Largest excitation subspace: N/2 for even N, (N+1)/2 for odd N.
  int largest_subspace() const { return (spins + 1) / 2; }
};

/// Heisenberg exchange sum_k (1+eps_k)(XX + YY + ZZ) on H_n, without J.
HermitianOperator build_h0(const ChainSpec& spec, int excitations);

/// Diagonal control operator sum_k w_k Z_k on H_n, with Z|0> = +|0>.
HermitianOperator build_h1(const ChainSpec& spec, int excitations);

/// Projector onto the singlet of spins 1 and N, tensored with the identity
/// on the interior, restricted to H_n. Zero for n = 0 and n = N.
HermitianOperator build_target_observable(int spins, int excitations);

struct GroundState {
  double energy = 0.0;
  Eigen::VectorXcd vector;
  bool degenerate = false;
};

/// Lowest eigenpair of `op`. `degenerate` is set when the gap to the next
/// eigenvalue is below rel_gap_tol times the spectral range.
GroundState ground_state(const HermitianOperator& op, double rel_gap_tol = 1e-9);

/// Ground state of J*H0 on the largest excitation subspace of `spec`.
PureState chain_ground_state(const ChainSpec& spec);

/// Thermal populations of one excitation block in the eigenbasis of J*H0.
struct ThermalBlock {
  int excitations = 0;
  Eigen::VectorXd energies;      // ascending, J applied
  Eigen::VectorXd weights;       // Boltzmann weights, non-increasing
  Eigen::MatrixXcd eigenvectors;  // columns match `energies`

  Eigen::MatrixXcd density() const;
};

/// Gibbs state exp(-J H0 / kT) / Z split into excitation blocks.
struct ThermalState {
  int spins = 0;
  double temperature = 0.0;  // k_B T / J
  std::vector<ThermalBlock> blocks;

  BlockDensity density() const;
  double total_weight() const;
};

/// Thermal ensemble at temperature kT (in units of J). kT = 0 gives the
/// uniform mixture over the global ground manifold. Blocks whose total weight
/// falls below `drop_below` are omitted.
ThermalState thermal_state(const ChainSpec& spec, double kT_over_J, double drop_below = 0.0);

/// N-1 bond offsets drawn uniformly from [-alpha, alpha].
std::vector<double> sample_disorder(int spins, double alpha, std::uint64_t seed);

}  // namespace chainctl

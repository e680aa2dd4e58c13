#pragma once

#include <Eigen/Dense>

#include "chainctl/basis.hpp"
#include "chainctl/hamiltonians.hpp"
#include "chainctl/operator.hpp"
#include "chainctl/state.hpp"

namespace chainctl {

/// Two-spin density matrix of (spin 1, spin N) in the basis |00>, |01>, |10>, |11>.
using EndPairDensity = Eigen::Matrix4cd;

/// <psi|A|psi>. Throws DimensionMismatch when sizes disagree.
double fidelity(const Eigen::VectorXcd& psi, const HermitianOperator& target);
double fidelity(const PureState& psi);

/// Tr[A rho] summed over blocks, with the singlet projector built per block.
double fidelity(const BlockDensity& state);

EndPairDensity reduced_end_density(const Eigen::VectorXcd& psi, const EndPairPartition& partition);
EndPairDensity reduced_end_density(const PureState& psi);
EndPairDensity reduced_end_density(const DensityBlock& block, const EndPairPartition& partition);
EndPairDensity reduced_end_density(const BlockDensity& state);

/// Negative eigenvalues down to this magnitude are clipped before the
/// concurrence is evaluated; anything lower is an invalid density.
inline constexpr double kPositivityClip = 1e-9;

/// Wootters concurrence max(0, l1 - l2 - l3 - l4). Throws DomainError when
/// the input is not a density matrix (trace or positivity off by more than
/// the documented tolerances).
double concurrence(const EndPairDensity& rho);

/// Rank of the singlet projector on H_n: C(N-2, n-1) for 1 <= n <= N-1.
int plus_eigenspace_dim(int spins, int excitations);

/// Sum over blocks of the d_n largest thermal weights: the best Tr[A rho]
/// any block-diagonal unitary can reach from this ensemble.
double thermal_fidelity_bound(const ThermalState& state);
double thermal_fidelity_bound(const ChainSpec& spec, double kT_over_J);

}  // namespace chainctl

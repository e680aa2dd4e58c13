#pragma once

#include <vector>

#include <Eigen/Dense>

namespace chainctl {

/// Pure state on the excitation subspace H_n of an N-spin chain.
struct PureState {
  int spins = 0;
  int excitations = 0;
  Eigen::VectorXcd amplitudes;
};

/// Density operator restricted to one excitation subspace.
struct DensityBlock {
  int excitations = 0;
  Eigen::MatrixXcd rho;
};

/// Block-diagonal density operator, one block per populated excitation
/// subspace. Subspaces without a block carry zero weight.
struct BlockDensity {
  int spins = 0;
  std::vector<DensityBlock> blocks;

  double trace() const;
  double purity() const;
  const DensityBlock* find(int excitations) const;

  static BlockDensity from_pure(const PureState& psi);
};

}  // namespace chainctl

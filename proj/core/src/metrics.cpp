#include "chainctl/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "chainctl/errors.hpp"
#include "chainctl/linalg.hpp"

namespace chainctl {

double BlockDensity::trace() const {
  double t = 0.0;
  for (const auto& b : blocks) t += b.rho.trace().real();
  return t;
}

double BlockDensity::purity() const {
  double p = 0.0;
  for (const auto& b : blocks) p += (b.rho * b.rho).trace().real();
  return p;
}

const DensityBlock* BlockDensity::find(int excitations) const {
  for (const auto& b : blocks) {
    if (b.excitations == excitations) return &b;
  }
  return nullptr;
}

BlockDensity BlockDensity::from_pure(const PureState& psi) {
  BlockDensity out;
  out.spins = psi.spins;
  out.blocks.push_back({psi.excitations, psi.amplitudes * psi.amplitudes.adjoint()});
  return out;
}

double fidelity(const Eigen::VectorXcd& psi, const HermitianOperator& target) {
  if (psi.size() != target.dim()) {
    throw DimensionMismatch("state and target observable have different dimensions");
  }
  return psi.dot(target.matrix() * psi).real();
}

double fidelity(const PureState& psi) {
  return fidelity(psi.amplitudes, build_target_observable(psi.spins, psi.excitations));
}

double fidelity(const BlockDensity& state) {
  double f = 0.0;
  for (const auto& b : state.blocks) {
    const HermitianOperator a = build_target_observable(state.spins, b.excitations);
    if (b.rho.rows() != a.dim()) {
      throw DimensionMismatch("density block for n=" + std::to_string(b.excitations) +
                              " has the wrong size");
    }
    f += (a.matrix() * b.rho).trace().real();
  }
  return f;
}

namespace {

void check_partition(const EndPairPartition& part, Eigen::Index dim) {
  std::size_t total = 0;
  for (const auto& g : part.groups) total += g.size();
  if (static_cast<Eigen::Index>(total) != dim) {
    throw DimensionMismatch("end-pair partition does not cover the state's basis");
  }
}

// rho_end(v, w) = sum over shared interior configurations of element(i_v, i_w).
EndPairDensity reduce(const EndPairPartition& part,
                      const std::function<std::complex<double>(std::size_t, std::size_t)>& element) {
  EndPairDensity out = EndPairDensity::Zero();
  for (int v = 0; v < 4; ++v) {
    for (const auto& e : part.groups[v]) out(v, v) += element(e.index, e.index);
  }
  const auto& g01 = part[EndPair::k01];
  const auto& g10 = part[EndPair::k10];
  std::complex<double> coherence = 0.0;
  for (std::size_t i = 0; i < g01.size(); ++i) coherence += element(g01[i].index, g10[i].index);
  out(1, 2) = coherence;
  out(2, 1) = std::conj(coherence);
  return out;
}

}  // namespace

EndPairDensity reduced_end_density(const Eigen::VectorXcd& psi, const EndPairPartition& partition) {
  check_partition(partition, psi.size());
  return reduce(partition, [&](std::size_t i, std::size_t j) {
    return psi(static_cast<Eigen::Index>(i)) * std::conj(psi(static_cast<Eigen::Index>(j)));
  });
}

EndPairDensity reduced_end_density(const PureState& psi) {
  return reduced_end_density(psi.amplitudes,
                             end_pair_partition(SubspaceBasis(psi.spins, psi.excitations)));
}

EndPairDensity reduced_end_density(const DensityBlock& block, const EndPairPartition& partition) {
  check_partition(partition, block.rho.rows());
  return reduce(partition, [&](std::size_t i, std::size_t j) {
    return block.rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  });
}

EndPairDensity reduced_end_density(const BlockDensity& state) {
  EndPairDensity out = EndPairDensity::Zero();
  for (const auto& b : state.blocks) {
    out += reduced_end_density(b, end_pair_partition(SubspaceBasis(state.spins, b.excitations)));
  }
  return out;
}

double concurrence(const EndPairDensity& rho) {
  const double trace = rho.trace().real();
  if (std::abs(trace - 1.0) > 1e-8) {
    throw DomainError("end-pair density has trace " + std::to_string(trace));
  }
  if (hermiticity_defect(rho) > 1e-9) throw DomainError("end-pair density is not Hermitian");

  // With rho = W W^dagger, the Wootters lambdas are the singular values of the
  // symmetric matrix W^T (Y x Y) W. This avoids square roots of round-off
  // eigenvalues of sqrt(rho) rho~ sqrt(rho) for rank-deficient states.
  const Spectrum es = eigh(Eigen::MatrixXcd(rho));
  if (es.values.minCoeff() < -kPositivityClip) {
    throw DomainError("end-pair density has eigenvalue " + std::to_string(es.values.minCoeff()));
  }
  const Eigen::VectorXd root = es.values.cwiseMax(0.0).cwiseSqrt();
  const Eigen::Matrix4cd w = es.vectors * root.asDiagonal();
  Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const Eigen::Matrix4cd tau = w.transpose() * yy * w;
  const Eigen::Vector4d lambda = Eigen::JacobiSVD<Eigen::Matrix4cd>(tau).singularValues();
  return std::max(0.0, lambda(0) - lambda(1) - lambda(2) - lambda(3));
}

int plus_eigenspace_dim(int spins, int excitations) {
  if (excitations < 0 || excitations > spins) {
    throw DomainError("excitation count outside [0, N]");
  }
  if (excitations == 0 || excitations == spins) return 0;
  return static_cast<int>(binomial(spins - 2, excitations - 1));
}

double thermal_fidelity_bound(const ThermalState& state) {
  double bound = 0.0;
  for (const auto& b : state.blocks) {
    std::vector<double> w(b.weights.data(), b.weights.data() + b.weights.size());
    std::sort(w.begin(), w.end(), std::greater<>());
    const auto take = std::min<std::size_t>(
        w.size(), static_cast<std::size_t>(plus_eigenspace_dim(state.spins, b.excitations)));
    for (std::size_t m = 0; m < take; ++m) bound += w[m];
  }
  return bound;
}

double thermal_fidelity_bound(const ChainSpec& spec, double kT_over_J) {
  return thermal_fidelity_bound(thermal_state(spec, kT_over_J));
}

}  // namespace chainctl

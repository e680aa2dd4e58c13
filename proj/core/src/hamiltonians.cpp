#include "chainctl/hamiltonians.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "chainctl/errors.hpp"
#include "chainctl/linalg.hpp"

namespace chainctl {

ChainSpec ChainSpec::uniform(int spins, double coupling) {
  ChainSpec spec;
  spec.spins = spins;
  spec.coupling = coupling;
  return spec;
}

void ChainSpec::validate() const {
  if (spins < 2 || spins > kMaxSpins) {
    throw DomainError("chain length must lie in [2, " + std::to_string(kMaxSpins) + "]");
  }
  if (!(coupling > 0.0)) throw DomainError("coupling J must be positive");
  if (!bond_offsets.empty() && static_cast<int>(bond_offsets.size()) != spins - 1) {
    throw DomainError("expected " + std::to_string(spins - 1) + " bond offsets, got " +
                      std::to_string(bond_offsets.size()));
  }
  for (const double e : bond_offsets) {
    if (!(std::abs(e) <= 1.0)) throw DomainError("bond offset outside [-1, 1]");
  }
  if (!(leakage >= 0.0)) throw DomainError("leakage xi must be non-negative");
}

double ChainSpec::bond_strength(int bond) const {
  return bond_offsets.empty() ? 1.0 : 1.0 + bond_offsets[bond - 1];
}

double ChainSpec::field_weight(int site) const {
  if (site == 1) return 1.0;
  if (leakage == 0.0) return 0.0;
  if (std::isinf(leakage)) return 1.0;
  return std::exp(-static_cast<double>(site - 1) / leakage);
}

HermitianOperator build_h0(const ChainSpec& spec, int excitations) {
  spec.validate();
  auto basis = std::make_shared<const SubspaceBasis>(spec.spins, excitations);
  const int n = spec.spins;
  const auto d = static_cast<Eigen::Index>(basis->dim());
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(d, d);
  const auto configs = basis->configs();
  for (Eigen::Index i = 0; i < d; ++i) {
    const Config c = configs[static_cast<std::size_t>(i)];
    double diag = 0.0;
    for (int k = 1; k < n; ++k) {
      const double b = spec.bond_strength(k);
      const bool a1 = spin_excited(c, n, k);
      const bool a2 = spin_excited(c, n, k + 1);
      if (a1 == a2) {
        diag += b;
      } else {
        diag -= b;
        // XX + YY maps |01> <-> |10> with amplitude 2.
        const Config flipped =
            c ^ ((Config{1} << spin_bit(n, k)) | (Config{1} << spin_bit(n, k + 1)));
        h(static_cast<Eigen::Index>(basis->rank(flipped)), i) = 2.0 * b;
      }
    }
    h(i, i) = diag;
  }
  return HermitianOperator(std::move(basis), std::move(h));
}

HermitianOperator build_h1(const ChainSpec& spec, int excitations) {
  spec.validate();
  auto basis = std::make_shared<const SubspaceBasis>(spec.spins, excitations);
  const int n = spec.spins;
  const auto d = static_cast<Eigen::Index>(basis->dim());
  std::vector<double> weights(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) weights[k - 1] = spec.field_weight(k);
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(d, d);
  const auto configs = basis->configs();
  for (Eigen::Index i = 0; i < d; ++i) {
    double value = 0.0;
    for (int k = 1; k <= n; ++k) {
      if (weights[k - 1] == 0.0) continue;
      value += spin_excited(configs[static_cast<std::size_t>(i)], n, k) ? -weights[k - 1]
                                                                       : weights[k - 1];
    }
    h(i, i) = value;
  }
  return HermitianOperator(std::move(basis), std::move(h));
}

HermitianOperator build_target_observable(int spins, int excitations) {
  auto basis = std::make_shared<const SubspaceBasis>(spins, excitations);
  const auto d = static_cast<Eigen::Index>(basis->dim());
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(d, d);
  const EndPairPartition part = end_pair_partition(*basis);
  const auto& g01 = part[EndPair::k01];
  const auto& g10 = part[EndPair::k10];
  // <01|psi-> = 1/sqrt2, <10|psi-> = -1/sqrt2; interiors pair up by position.
  for (std::size_t i = 0; i < g01.size(); ++i) {
    const auto u = static_cast<Eigen::Index>(g01[i].index);
    const auto v = static_cast<Eigen::Index>(g10[i].index);
    a(u, u) = 0.5;
    a(v, v) = 0.5;
    a(u, v) = -0.5;
    a(v, u) = -0.5;
  }
  return HermitianOperator(std::move(basis), std::move(a));
}

GroundState ground_state(const HermitianOperator& op, double rel_gap_tol) {
  const Spectrum s = eigh(op);
  GroundState out;
  out.energy = s.values(0);
  out.vector = s.vectors.col(0);
  if (s.values.size() > 1) {
    const double range = s.values(s.values.size() - 1) - s.values(0);
    out.degenerate = (s.values(1) - s.values(0)) <= rel_gap_tol * range;
  }
  return out;
}

PureState chain_ground_state(const ChainSpec& spec) {
  const int n = spec.largest_subspace();
  const GroundState g = ground_state(build_h0(spec, n));
  return {spec.spins, n, g.vector};
}

Eigen::MatrixXcd ThermalBlock::density() const {
  return eigenvectors * weights.cast<std::complex<double>>().asDiagonal() *
         eigenvectors.adjoint();
}

BlockDensity ThermalState::density() const {
  BlockDensity out;
  out.spins = spins;
  for (const auto& b : blocks) out.blocks.push_back({b.excitations, b.density()});
  return out;
}

double ThermalState::total_weight() const {
  double total = 0.0;
  for (const auto& b : blocks) total += b.weights.sum();
  return total;
}

ThermalState thermal_state(const ChainSpec& spec, double kT_over_J, double drop_below) {
  spec.validate();
  if (!(kT_over_J >= 0.0)) throw DomainError("temperature must be non-negative");
  ThermalState out;
  out.spins = spec.spins;
  out.temperature = kT_over_J;

  std::vector<ThermalBlock> blocks;
  double e_min = std::numeric_limits<double>::infinity();
  double e_max = -std::numeric_limits<double>::infinity();
  for (int n = 0; n <= spec.spins; ++n) {
    Spectrum s = eigh(build_h0(spec, n));
    ThermalBlock b;
    b.excitations = n;
    b.energies = spec.coupling * s.values;
    b.eigenvectors = std::move(s.vectors);
    e_min = std::min(e_min, b.energies.minCoeff());
    e_max = std::max(e_max, b.energies.maxCoeff());
    blocks.push_back(std::move(b));
  }

  // Boltzmann factors relative to the global ground energy; kT = 0 keeps the
  // degenerate ground manifold only.
  const double ground_tol = 1e-9 * std::max(1.0, e_max - e_min);
  double z = 0.0;
  for (auto& b : blocks) {
    b.weights.resize(b.energies.size());
    for (Eigen::Index m = 0; m < b.energies.size(); ++m) {
      const double shift = b.energies(m) - e_min;
      b.weights(m) = kT_over_J > 0.0 ? std::exp(-shift / kT_over_J)
                                     : (shift <= ground_tol ? 1.0 : 0.0);
    }
    z += b.weights.sum();
  }
  for (auto& b : blocks) {
    b.weights /= z;
    if (b.weights.sum() < drop_below || b.weights.sum() == 0.0) continue;
    out.blocks.push_back(std::move(b));
  }
  return out;
}

std::vector<double> sample_disorder(int spins, double alpha, std::uint64_t seed) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw DomainError("disorder strength alpha must lie in [0, 1]");
  }
  if (spins < 2) throw DomainError("chain needs at least two spins");
  std::vector<double> eps(static_cast<std::size_t>(spins - 1), 0.0);
  if (alpha == 0.0) return eps;
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> dist(-alpha, alpha);
  for (auto& e : eps) e = dist(gen);
  return eps;
}

}  // namespace chainctl

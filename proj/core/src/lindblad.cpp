#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "chainctl/errors.hpp"
#include "chainctl/metrics.hpp"
#include "chainctl/propagation.hpp"

namespace chainctl {
namespace {

using cplx = std::complex<double>;

// drho/dt = -i[H, rho] + R o rho. H is real symmetric, so rho H = (H rho)^dagger.
void lindblad_rhs(const Eigen::MatrixXd& h, const Eigen::MatrixXd& rates,
                  const Eigen::MatrixXcd& rho, Eigen::MatrixXcd& out) {
  out.noalias() = h * rho;
  out = cplx(0.0, -1.0) * (out - out.adjoint()).eval();
  out += rates.cwiseProduct(rho.real()).cast<cplx>() +
         cplx(0.0, 1.0) * rates.cwiseProduct(rho.imag()).cast<cplx>();
}

}  // namespace

Eigen::MatrixXd dephasing_rates(const SubspaceBasis& basis, const LindbladSpec& lind) {
  if (!(lind.gamma >= 0.0)) throw DomainError("dephasing rate must be non-negative");
  const int n = basis.spins();
  Config mask = 0;
  if (lind.model == DephasingModel::EndSpins) {
    mask = (Config{1} << spin_bit(n, 1)) | (Config{1} << spin_bit(n, n));
  } else {
    mask = (Config{1} << n) - 1;
  }
  const auto configs = basis.configs();
  const auto d = static_cast<Eigen::Index>(configs.size());
  Eigen::MatrixXd r(d, d);
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = 0; b < d; ++b) {
      const Config diff = (configs[static_cast<std::size_t>(a)] ^
                           configs[static_cast<std::size_t>(b)]) & mask;
      // 1 - z_k(a) z_k(b) is 2 where spin k differs and 0 otherwise.
      r(a, b) = -2.0 * lind.gamma * std::popcount(diff);
    }
  }
  return r;
}

DensityBlock evolve_lindblad(const Pulse& pulse, const DensityBlock& rho0, const LindbladSpec& lind,
                             const ChainSpec& spec, int substeps) {
  if (substeps < 1) throw DomainError("substep count must be positive");
  if (!pulse.amplitudes.empty()) pulse.validate();
  const HermitianOperator h0 = build_h0(spec, rho0.excitations);
  const HermitianOperator h1 = build_h1(spec, rho0.excitations);
  if (rho0.rho.rows() != h0.dim() || rho0.rho.cols() != h0.dim()) {
    throw DimensionMismatch("density block does not match H_" +
                            std::to_string(rho0.excitations));
  }
  const Eigen::MatrixXd drift = spec.coupling * h0.real_matrix();
  const Eigen::VectorXd control = h1.matrix().diagonal().real();
  const Eigen::MatrixXd rates = dephasing_rates(h0.basis(), lind);

  const auto d = h0.dim();
  Eigen::MatrixXcd rho = rho0.rho;
  Eigen::MatrixXcd k1(d, d), k2(d, d), k3(d, d), k4(d, d), tmp(d, d);
  const double h = pulse.dt / substeps;
  for (const double b : pulse.amplitudes) {
    Eigen::MatrixXd ham = drift;
    ham.diagonal() += b * control;
    for (int s = 0; s < substeps; ++s) {
      lindblad_rhs(ham, rates, rho, k1);
      tmp = rho + (0.5 * h) * k1;
      lindblad_rhs(ham, rates, tmp, k2);
      tmp = rho + (0.5 * h) * k2;
      lindblad_rhs(ham, rates, tmp, k3);
      tmp = rho + h * k3;
      lindblad_rhs(ham, rates, tmp, k4);
      rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
  }
  // Round-off only; the exact generator preserves Hermiticity.
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return {rho0.excitations, std::move(rho)};
}

LindbladRun evolve_lindblad_converged(const Pulse& pulse, const DensityBlock& rho0,
                                      const LindbladSpec& lind, const ChainSpec& spec, double tol,
                                      int max_doublings) {
  const HermitianOperator h0 = build_h0(spec, rho0.excitations);
  const HermitianOperator h1 = build_h1(spec, rho0.excitations);
  double field_max = 0.0;
  for (const double b : pulse.amplitudes) field_max = std::max(field_max, std::abs(b));
  const double h_norm = spec.coupling * h0.matrix().cwiseAbs().rowwise().sum().maxCoeff() +
                        field_max * h1.matrix().cwiseAbs().maxCoeff() +
                        2.0 * lind.gamma * spec.spins;
  int substeps = std::max(1, static_cast<int>(std::ceil(pulse.dt * h_norm / 0.5)));

  // A coarse step can leave the reduced state slightly non-positive; such a
  // level counts as unresolved and the step is refined further.
  const auto end_concurrence = [&](const DensityBlock& block) -> std::optional<double> {
    BlockDensity state;
    state.spins = spec.spins;
    state.blocks.push_back(block);
    try {
      return concurrence(reduced_end_density(state));
    } catch (const DomainError&) {
      return std::nullopt;
    }
  };

  std::optional<double> c_coarse = end_concurrence(evolve_lindblad(pulse, rho0, lind, spec, substeps));
  double change = std::numeric_limits<double>::infinity();
  for (int i = 0; i < max_doublings; ++i) {
    substeps *= 2;
    DensityBlock fine = evolve_lindblad(pulse, rho0, lind, spec, substeps);
    const std::optional<double> c_fine = end_concurrence(fine);
    if (c_fine && c_coarse) {
      change = std::abs(*c_fine - *c_coarse);
      if (change < tol) return {std::move(fine), substeps, change};
    }
    c_coarse = c_fine;
  }
  throw NumericalError("Lindblad integration did not converge: concurrence still moved by " +
                       std::to_string(change) + " at " + std::to_string(substeps) +
                       " substeps per pulse step");
}

}  // namespace chainctl

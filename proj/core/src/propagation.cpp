#include "chainctl/propagation.hpp"

#include <cmath>
#include <string>

#include "chainctl/detail/step_kernel.hpp"
#include "chainctl/errors.hpp"

namespace chainctl {
namespace {

template <class Scalar>
void run_pure(const Pulse& pulse, const detail::Generators<Scalar>& gen, Eigen::MatrixXcd& psi,
              std::vector<Eigen::VectorXcd>* trajectory) {
  if (trajectory) trajectory->push_back(psi.col(0));
  for (const double b : pulse.amplitudes) {
    detail::apply_step(detail::diagonalize(gen, b), pulse.dt, psi);
    if (trajectory) trajectory->push_back(psi.col(0));
  }
}

template <class Scalar>
Eigen::MatrixXcd run_propagator(const Pulse& pulse, const detail::Generators<Scalar>& gen) {
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(gen.dim(), gen.dim());
  for (const double b : pulse.amplitudes) {
    detail::apply_step(detail::diagonalize(gen, b), pulse.dt, u);
  }
  return u;
}

bool real_pair(const HermitianOperator& h0, const HermitianOperator& h1) {
  return h0.is_real() && h1.is_real();
}

}  // namespace

Propagator step_propagator(const HermitianOperator& h0, const HermitianOperator& h1,
                           double coupling, double field, double dt) {
  if (!(dt > 0.0)) throw DomainError("step duration must be positive");
  Propagator out{{}, field, dt, coupling};
  if (real_pair(h0, h1)) {
    const detail::Generators<double> gen(h0, h1, coupling);
    out.unitary = detail::step_unitary(detail::diagonalize(gen, field), dt);
  } else {
    const detail::Generators<detail::cplx> gen(h0, h1, coupling);
    out.unitary = detail::step_unitary(detail::diagonalize(gen, field), dt);
  }
  return out;
}

PureEvolution evolve_pure(const Pulse& pulse, const Eigen::VectorXcd& psi0,
                          const HermitianOperator& h0, const HermitianOperator& h1,
                          double coupling, bool record_trajectory) {
  require_same_basis(h0, h1);
  if (psi0.size() != h0.dim()) {
    throw DimensionMismatch("initial state has " + std::to_string(psi0.size()) +
                            " amplitudes, subspace dimension is " + std::to_string(h0.dim()));
  }
  if (std::abs(psi0.norm() - 1.0) > 1e-9) throw DomainError("initial state is not normalised");
  if (!pulse.amplitudes.empty()) pulse.validate();

  PureEvolution out;
  Eigen::MatrixXcd psi = psi0;
  auto* traj = record_trajectory ? &out.trajectory : nullptr;
  if (real_pair(h0, h1)) {
    run_pure(pulse, detail::Generators<double>(h0, h1, coupling), psi, traj);
  } else {
    run_pure(pulse, detail::Generators<detail::cplx>(h0, h1, coupling), psi, traj);
  }
  out.final_state = psi.col(0);
  return out;
}

Eigen::MatrixXcd pulse_propagator(const Pulse& pulse, const HermitianOperator& h0,
                                  const HermitianOperator& h1, double coupling) {
  if (!pulse.amplitudes.empty()) pulse.validate();
  if (real_pair(h0, h1)) return run_propagator(pulse, detail::Generators<double>(h0, h1, coupling));
  return run_propagator(pulse, detail::Generators<detail::cplx>(h0, h1, coupling));
}

std::vector<Eigen::MatrixXcd> block_propagators(const Pulse& pulse, const ChainSpec& spec,
                                                const std::vector<int>& excitations) {
  std::vector<Eigen::MatrixXcd> out;
  out.reserve(excitations.size());
  for (const int n : excitations) {
    out.push_back(pulse_propagator(pulse, build_h0(spec, n), build_h1(spec, n), spec.coupling));
  }
  return out;
}

BlockDensity evolve_density_unitary(const Pulse& pulse, const BlockDensity& state,
                                    const ChainSpec& spec) {
  if (state.spins != spec.spins) {
    throw DimensionMismatch("state and chain have different lengths");
  }
  BlockDensity out;
  out.spins = state.spins;
  for (const auto& block : state.blocks) {
    const auto expected = static_cast<Eigen::Index>(binomial(spec.spins, block.excitations));
    if (block.rho.rows() != expected || block.rho.cols() != expected) {
      throw DimensionMismatch("density block for n=" + std::to_string(block.excitations) +
                              " has the wrong size");
    }
    const Eigen::MatrixXcd u = pulse_propagator(pulse, build_h0(spec, block.excitations),
                                                build_h1(spec, block.excitations), spec.coupling);
    out.blocks.push_back({block.excitations, u * block.rho * u.adjoint()});
  }
  return out;
}

BlockDensity evolve_density_unitary(const Pulse& pulse, const ThermalState& state,
                                    const ChainSpec& spec) {
  if (state.spins != spec.spins) {
    throw DimensionMismatch("state and chain have different lengths");
  }
  BlockDensity out;
  out.spins = state.spins;
  for (const auto& block : state.blocks) {
    const Eigen::MatrixXcd u = pulse_propagator(pulse, build_h0(spec, block.excitations),
                                                build_h1(spec, block.excitations), spec.coupling);
    const Eigen::MatrixXcd evolved = u * block.eigenvectors;
    out.blocks.push_back({block.excitations, evolved *
                                                 block.weights.cast<detail::cplx>().asDiagonal() *
                                                 evolved.adjoint()});
  }
  return out;
}

}  // namespace chainctl

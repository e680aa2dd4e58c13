#include <cmath>
#include <string>

#include "chainctl/detail/step_kernel.hpp"
#include "chainctl/errors.hpp"
#include "chainctl/metrics.hpp"
#include "chainctl/optimizer.hpp"

namespace chainctl {
namespace {

using detail::cplx;
using Gen = detail::Generators<double>;
using Step = detail::StepEigen<double>;

void check_pulse(const Pulse& pulse) {
  if (pulse.amplitudes.empty()) throw DomainError("pulse has no steps");
  if (!(pulse.dt > 0.0)) throw DomainError("pulse step duration must be positive");
  for (const double b : pulse.amplitudes) {
    if (!std::isfinite(b)) throw DomainError("pulse amplitude is not finite");
  }
}

double block_value(const ControlBlock& block, const Eigen::MatrixXcd& x,
                   const Eigen::MatrixXcd& ax) {
  double v = 0.0;
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    v += block.weights(c) * x.col(c).dot(ax.col(c)).real();
  }
  return v;
}

Eigen::MatrixXcd forward(const Pulse& pulse, const Gen& gen, Eigen::MatrixXcd x) {
  for (const double b : pulse.amplitudes) detail::apply_step(detail::diagonalize(gen, b), pulse.dt, x);
  return x;
}

}  // namespace

ControlProblem ControlProblem::pure(const ChainSpec& spec, const PureState& psi0) {
  spec.validate();
  if (psi0.spins != spec.spins) throw DimensionMismatch("initial state and chain differ in N");
  ControlProblem p(spec, ObjectiveKind::PureFidelity, psi0.excitations);
  ControlBlock block{psi0.excitations,
                     build_h0(spec, psi0.excitations),
                     build_h1(spec, psi0.excitations),
                     build_target_observable(spec.spins, psi0.excitations),
                     psi0.amplitudes,
                     Eigen::VectorXd::Ones(1)};
  if (block.states.rows() != block.drift.dim()) {
    throw DimensionMismatch("initial state does not live in H_" +
                            std::to_string(psi0.excitations));
  }
  if (std::abs(psi0.amplitudes.norm() - 1.0) > 1e-9) {
    throw DomainError("initial state is not normalised");
  }
  p.blocks_.push_back(std::move(block));
  return p;
}

ControlProblem ControlProblem::ground_state(const ChainSpec& spec) {
  return pure(spec, chain_ground_state(spec));
}

ControlProblem ControlProblem::ensemble(const ChainSpec& spec, const ThermalState& state,
                                        double min_weight) {
  spec.validate();
  if (state.spins != spec.spins) throw DimensionMismatch("thermal state and chain differ in N");
  ControlProblem p(spec, ObjectiveKind::EnsembleFidelity, spec.largest_subspace());
  for (const auto& tb : state.blocks) {
    std::vector<Eigen::Index> keep;
    for (Eigen::Index m = 0; m < tb.weights.size(); ++m) {
      if (tb.weights(m) >= min_weight && tb.weights(m) > 0.0) keep.push_back(m);
    }
    if (keep.empty()) continue;
    ControlBlock block{tb.excitations,
                       build_h0(spec, tb.excitations),
                       build_h1(spec, tb.excitations),
                       build_target_observable(spec.spins, tb.excitations),
                       Eigen::MatrixXcd(tb.eigenvectors.rows(), static_cast<Eigen::Index>(keep.size())),
                       Eigen::VectorXd(static_cast<Eigen::Index>(keep.size()))};
    for (std::size_t i = 0; i < keep.size(); ++i) {
      const auto c = static_cast<Eigen::Index>(i);
      block.states.col(c) = tb.eigenvectors.col(keep[i]);
      block.weights(c) = tb.weights(keep[i]);
    }
    p.blocks_.push_back(std::move(block));
  }
  return p;
}

BlockDensity ControlProblem::final_state(const Pulse& pulse) const {
  check_pulse(pulse);
  BlockDensity out;
  out.spins = spec_.spins;
  for (const auto& block : blocks_) {
    const Eigen::MatrixXcd x =
        forward(pulse, Gen(block.drift, block.control, spec_.coupling), block.states);
    out.blocks.push_back(
        {block.excitations, x * block.weights.cast<cplx>().asDiagonal() * x.adjoint()});
  }
  return out;
}

PureState ControlProblem::final_pure_state(const Pulse& pulse) const {
  if (kind_ != ObjectiveKind::PureFidelity) {
    throw DomainError("final_pure_state needs a pure-state problem");
  }
  check_pulse(pulse);
  const auto& block = blocks_.front();
  const Eigen::MatrixXcd x =
      forward(pulse, Gen(block.drift, block.control, spec_.coupling), block.states);
  return {spec_.spins, block.excitations, x.col(0)};
}

double objective(const Pulse& pulse, const ControlProblem& problem) {
  check_pulse(pulse);
  double k = 0.0;
  for (const auto& block : problem.blocks()) {
    const Eigen::MatrixXcd x =
        forward(pulse, Gen(block.drift, block.control, problem.spec().coupling), block.states);
    k += block_value(block, x, block.target.matrix() * x);
  }
  return k;
}

ObjectiveValue objective_and_gradient(const Pulse& pulse, const ControlProblem& problem) {
  check_pulse(pulse);
  const std::size_t p = pulse.steps();
  const double dt = pulse.dt;
  ObjectiveValue out;
  out.gradient.assign(p, 0.0);

  std::vector<Step> steps(p);
  std::vector<Eigen::MatrixXcd> before(p);  // eigen-coordinates of the state entering step m
  for (const auto& block : problem.blocks()) {
    const Gen gen(block.drift, block.control, problem.spec().coupling);
    Eigen::MatrixXcd x = block.states;
    for (std::size_t m = 0; m < p; ++m) {
      steps[m] = detail::diagonalize(gen, pulse.amplitudes[m]);
      before[m] = steps[m].vectors.transpose() * x;
      x.noalias() = steps[m].vectors * (detail::phases(steps[m].values, dt).asDiagonal() * before[m]);
    }
    // Costate lambda(t_f) = A psi(t_f), propagated backwards.
    Eigen::MatrixXcd y = block.target.matrix() * x;
    out.value += block_value(block, x, y);

    const Eigen::VectorXcd w = block.weights.cast<cplx>();
    for (std::size_t mi = p; mi-- > 0;) {
      const Step& s = steps[mi];
      const Eigen::MatrixXcd after = s.vectors.transpose() * y;
      // G_jk = sum_c w_c conj(after_jc) before_kc
      const Eigen::MatrixXcd g = after.conjugate() * (w.asDiagonal() * before[mi].transpose());
      const Eigen::MatrixXd control = gen.control_in_eigenbasis(s.vectors);
      const Eigen::MatrixXcd gamma = detail::frechet_kernel(s.values, dt);
      double d = 0.0;
      for (Eigen::Index k = 0; k < g.cols(); ++k) {
        for (Eigen::Index j = 0; j < g.rows(); ++j) {
          d += control(j, k) * (gamma(j, k) * g(j, k)).real();
        }
      }
      out.gradient[mi] += 2.0 * d;
      y.noalias() = s.vectors * (detail::phases(s.values, dt).conjugate().asDiagonal() * after);
    }
  }
  return out;
}

double final_concurrence(const Pulse& pulse, const ControlProblem& problem) {
  if (problem.kind() == ObjectiveKind::PureFidelity) {
    return concurrence(reduced_end_density(problem.final_pure_state(pulse)));
  }
  return concurrence(reduced_end_density(problem.final_state(pulse)));
}

}  // namespace chainctl

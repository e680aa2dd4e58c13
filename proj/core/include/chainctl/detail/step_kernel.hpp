#pragma once

// Piecewise-constant propagation kernels shared by the propagation and
// optimizer modules. Scalar is double for the real-symmetric operators the
// chain builders produce and std::complex<double> for general input.

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "chainctl/errors.hpp"
#include "chainctl/operator.hpp"

namespace chainctl::detail {

using cplx = std::complex<double>;

template <class Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// J*h0 and h1 for one block, in the scalar type of the fast path.
template <class Scalar>
struct Generators {
  Mat<Scalar> drift;
  Mat<Scalar> control;
  bool control_diagonal = false;
  Eigen::VectorXd control_diag;

  Generators() = default;
  Generators(const HermitianOperator& h0, const HermitianOperator& h1, double coupling) {
    require_same_basis(h0, h1);
    if constexpr (std::is_same_v<Scalar, double>) {
      drift = coupling * h0.real_matrix();
      control = h1.real_matrix();
    } else {
      drift = coupling * h0.matrix();
      control = h1.matrix();
    }
    control_diagonal = h1.is_diagonal();
    if (control_diagonal) control_diag = h1.matrix().diagonal().real();
  }

  Eigen::Index dim() const { return drift.rows(); }

  Mat<Scalar> hamiltonian(double field) const {
    Mat<Scalar> h = drift;
    if (control_diagonal) {
      h.diagonal() += (field * control_diag).template cast<Scalar>();
    } else {
      h += field * control;
    }
    return h;
  }

  /// V^dagger h1 V.
  Mat<Scalar> control_in_eigenbasis(const Mat<Scalar>& v) const {
    if (control_diagonal) {
      const Mat<Scalar> weighted = control_diag.template cast<Scalar>().asDiagonal() * v;
      return v.adjoint() * weighted;
    }
    return v.adjoint() * control * v;
  }
};

template <class Scalar>
struct StepEigen {
  Eigen::VectorXd values;
  Mat<Scalar> vectors;
};

template <class Scalar>
StepEigen<Scalar> diagonalize(const Generators<Scalar>& gen, double field) {
  Eigen::SelfAdjointEigenSolver<Mat<Scalar>> solver(gen.hamiltonian(field));
  if (solver.info() != Eigen::Success) {
    throw NumericalError("step Hamiltonian eigendecomposition failed");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

inline Eigen::VectorXcd phases(const Eigen::VectorXd& values, double dt) {
  Eigen::VectorXcd out(values.size());
  for (Eigen::Index j = 0; j < values.size(); ++j) out(j) = std::polar(1.0, -values(j) * dt);
  return out;
}

/// X <- exp(-i H dt) X for H = V diag(values) V^dagger.
template <class Scalar>
void apply_step(const StepEigen<Scalar>& e, double dt, Eigen::MatrixXcd& x) {
  Eigen::MatrixXcd coeff = e.vectors.adjoint() * x;
  coeff = phases(e.values, dt).asDiagonal() * coeff;
  x.noalias() = e.vectors * coeff;
}

template <class Scalar>
Eigen::MatrixXcd step_unitary(const StepEigen<Scalar>& e, double dt) {
  return e.vectors * phases(e.values, dt).asDiagonal() * e.vectors.adjoint();
}

inline double sinc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

/// Kernel of the exact derivative of exp(-i H dt) in the eigenbasis of H:
/// dU = V (V^dagger dH V o Gamma) V^dagger with
/// Gamma_jk = (e^{-i l_j dt} - e^{-i l_k dt}) / (l_j - l_k), written in the
/// cancellation-free form -i dt e^{-i (l_j + l_k) dt / 2} sinc((l_j - l_k) dt / 2).
inline Eigen::MatrixXcd frechet_kernel(const Eigen::VectorXd& values, double dt) {
  const Eigen::Index d = values.size();
  Eigen::VectorXcd half(d);
  for (Eigen::Index j = 0; j < d; ++j) half(j) = std::polar(1.0, -0.5 * values(j) * dt);
  Eigen::MatrixXcd gamma(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const double s = sinc(0.5 * (values(j) - values(k)) * dt);
      gamma(j, k) = cplx(0.0, -dt * s) * half(j) * half(k);
    }
  }
  return gamma;
}

}  // namespace chainctl::detail

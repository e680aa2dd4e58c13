#include "chainctl/linalg.hpp"

#include <string>

#include <Eigen/Eigenvalues>

#include "chainctl/errors.hpp"

namespace chainctl {

HermitianOperator::HermitianOperator(std::shared_ptr<const SubspaceBasis> basis,
                                     Eigen::MatrixXcd entries, double hermitian_tol)
    : basis_(std::move(basis)), entries_(std::move(entries)) {
  if (!basis_) throw DimensionMismatch("operator without a basis");
  const auto d = static_cast<Eigen::Index>(basis_->dim());
  if (entries_.rows() != d || entries_.cols() != d) {
    throw DimensionMismatch("operator is " + std::to_string(entries_.rows()) + "x" +
                            std::to_string(entries_.cols()) + " but the subspace has dim " +
                            std::to_string(d));
  }
  const double defect = hermiticity_defect(entries_);
  if (defect > hermitian_tol) {
    throw DomainError("operator is not Hermitian (defect " + std::to_string(defect) + ")");
  }
  is_real_ = entries_.imag().cwiseAbs().maxCoeff() == 0.0;
  Eigen::MatrixXcd off = entries_;
  off.diagonal().setZero();
  is_diagonal_ = off.cwiseAbs().maxCoeff() == 0.0;
}

void require_same_basis(const HermitianOperator& a, const HermitianOperator& b) {
  if (!(a.basis() == b.basis())) {
    throw DimensionMismatch("operators act on different subspaces (N=" +
                            std::to_string(a.basis().spins()) +
                            ", n=" + std::to_string(a.basis().excitations()) + " vs N=" +
                            std::to_string(b.basis().spins()) +
                            ", n=" + std::to_string(b.basis().excitations()) + ")");
  }
}

Spectrum eigh(const HermitianOperator& op) {
  if (op.is_real()) {
    RealSpectrum real = eigh(op.real_matrix());
    return {std::move(real.values), real.vectors.cast<std::complex<double>>()};
  }
  return eigh(op.matrix());
}

Spectrum eigh(const Eigen::MatrixXcd& hermitian) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("Hermitian eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RealSpectrum eigh(const Eigen::MatrixXd& symmetric) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetric);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("symmetric eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double hermiticity_defect(const Eigen::MatrixXcd& a) {
  if (a.size() == 0) return 0.0;
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_defect(const Eigen::MatrixXcd& u) {
  const Eigen::MatrixXcd d =
      u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols());
  if (d.size() == 0) return 0.0;
  // Hermitian, so the spectral norm is the largest |eigenvalue|.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(d, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace chainctl

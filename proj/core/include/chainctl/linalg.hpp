#pragma once

#include <Eigen/Dense>

#include "chainctl/operator.hpp"

namespace chainctl {

/// Eigenvalues in ascending order with orthonormal eigenvectors as columns.
struct Spectrum {
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;
};

struct RealSpectrum {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

/// Hermitian eigendecomposition. Throws NumericalError if the solver fails.
Spectrum eigh(const HermitianOperator& op);
Spectrum eigh(const Eigen::MatrixXcd& hermitian);
RealSpectrum eigh(const Eigen::MatrixXd& symmetric);

/// Largest |entry| of A - A^dagger.
double hermiticity_defect(const Eigen::MatrixXcd& a);

/// Spectral norm of U^dagger U - I.
double unitarity_defect(const Eigen::MatrixXcd& u);

}  // namespace chainctl

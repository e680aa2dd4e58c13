#pragma once

#include <memory>

#include <Eigen/Dense>

#include "chainctl/basis.hpp"

namespace chainctl {

/// Dense Hermitian matrix on one excitation subspace.
class HermitianOperator {
 public:
  /// Throws DimensionMismatch on a size mismatch and DomainError when
  /// `entries` deviates from its adjoint by more than `hermitian_tol`.
  HermitianOperator(std::shared_ptr<const SubspaceBasis> basis, Eigen::MatrixXcd entries,
                    double hermitian_tol = 1e-12);

  const SubspaceBasis& basis() const { return *basis_; }
  const std::shared_ptr<const SubspaceBasis>& shared_basis() const { return basis_; }
  const Eigen::MatrixXcd& matrix() const { return entries_; }
  Eigen::Index dim() const { return entries_.rows(); }

  bool is_real() const { return is_real_; }
  bool is_diagonal() const { return is_diagonal_; }
  /// Real part; meaningful when is_real().
  Eigen::MatrixXd real_matrix() const { return entries_.real(); }

 private:
  std::shared_ptr<const SubspaceBasis> basis_;
  Eigen::MatrixXcd entries_;
  bool is_real_ = false;
  bool is_diagonal_ = false;
};

/// Throws DimensionMismatch unless both operators act on the same subspace.
void require_same_basis(const HermitianOperator& a, const HermitianOperator& b);

}  // namespace chainctl

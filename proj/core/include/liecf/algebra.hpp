#pragma once

// Basis machinery for matrix Lie algebras: coordinate maps (hat/vee), the
// orthogonal projection onto the algebra, and the adjoint action in basis
// coordinates. Everything here is generic over the group; the concrete SE(3)
// instance lives in se3.hpp.

#include <vector>

#include <Eigen/Dense>

#include "liecf/errors.hpp"

namespace liecf {

/**
 * An orthonormal basis {b_1,...,b_n} of a matrix Lie algebra.
 *
 * Orthonormality is with respect to the trace inner product
 * <A,B> = trace(A^T B), which makes the induced metric on coordinate
 * vectors the plain Euclidean dot product. Construction verifies
 * pairwise orthonormality to 1e-12 and rejects anything else.
 */
class BasisSet {
 public:
  explicit BasisSet(std::vector<Eigen::MatrixXd> elements);

  /// Algebra dimension n (number of basis elements).
  int dim() const { return static_cast<int>(elements_.size()); }

  /// Side length of the matrix representation.
  int ambient() const { return static_cast<int>(elements_.front().rows()); }

  const Eigen::MatrixXd& element(int i) const { return elements_.at(static_cast<size_t>(i)); }
  const std::vector<Eigen::MatrixXd>& elements() const { return elements_; }

 private:
  std::vector<Eigen::MatrixXd> elements_;
};

/// Coordinate map: hat(a) = sum_i a_i b_i. Throws ArgumentError on dimension mismatch.
Eigen::MatrixXd hat(const BasisSet& basis, const Eigen::VectorXd& a);

/// Inverse coordinate map via orthonormality: a_i = trace(b_i^T M).
/// Throws ContractError if M is farther than `tol` (Frobenius) from the algebra.
Eigen::VectorXd vee(const BasisSet& basis, const Eigen::MatrixXd& M, double tol = 1e-6);

/// Orthogonal projection of an ambient matrix onto the algebra,
/// P(M) = sum_i trace(b_i^T M) b_i. Linear, idempotent, self-adjoint.
Eigen::MatrixXd project_algebra(const BasisSet& basis, const Eigen::MatrixXd& M);

/// Matrix of Ad_X in basis coordinates: column i = vee(X b_i X^{-1}).
Eigen::MatrixXd adjoint_matrix(const BasisSet& basis, const Eigen::MatrixXd& X);

/// Coordinates of Ad*_X(e), the metric adjoint of Ad_X. With an orthonormal
/// basis the metric is Euclidean, so this is adjoint_matrix(X)^T * e.
Eigen::VectorXd adjoint_star_coords(const BasisSet& basis, const Eigen::MatrixXd& X,
                                    const Eigen::VectorXd& e);

}  // namespace liecf

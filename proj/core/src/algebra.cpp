#include "liecf/algebra.hpp"

#include <cmath>

namespace liecf {

namespace {
constexpr double kOrthonormalTol = 1e-12;
}

BasisSet::BasisSet(std::vector<Eigen::MatrixXd> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) {
    throw ArgumentError("BasisSet: empty basis");
  }
  const auto rows = elements_.front().rows();
  for (const auto& b : elements_) {
    if (b.rows() != rows || b.cols() != rows) {
      throw ArgumentError("BasisSet: elements must be square and equally sized");
    }
  }
  for (size_t i = 0; i < elements_.size(); ++i) {
    for (size_t j = i; j < elements_.size(); ++j) {
      const double ip = (elements_[i].transpose() * elements_[j]).trace();
      const double expected = (i == j) ? 1.0 : 0.0;
      if (std::abs(ip - expected) > kOrthonormalTol) {
        throw ArgumentError("BasisSet: basis not orthonormal under the trace inner product");
      }
    }
  }
}

Eigen::MatrixXd hat(const BasisSet& basis, const Eigen::VectorXd& a) {
  if (a.size() != basis.dim()) {
    throw ArgumentError("hat: coordinate vector length does not match basis dimension");
  }
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(basis.ambient(), basis.ambient());
  for (int i = 0; i < basis.dim(); ++i) {
    M.noalias() += a[i] * basis.element(i);
  }
  return M;
}

Eigen::VectorXd vee(const BasisSet& basis, const Eigen::MatrixXd& M, double tol) {
  if (M.rows() != basis.ambient() || M.cols() != basis.ambient()) {
    throw ArgumentError("vee: matrix size does not match basis ambient dimension");
  }
  Eigen::VectorXd a(basis.dim());
  for (int i = 0; i < basis.dim(); ++i) {
    a[i] = (basis.element(i).transpose() * M).trace();
  }
  // Distance to the algebra = residual after re-expansion in the basis.
  Eigen::MatrixXd residual = M;
  for (int i = 0; i < basis.dim(); ++i) {
    residual.noalias() -= a[i] * basis.element(i);
  }
  if (residual.norm() > tol) {
    throw ContractError("vee: matrix lies outside the algebra (distance " +
                        std::to_string(residual.norm()) + ")");
  }
  return a;
}

Eigen::MatrixXd project_algebra(const BasisSet& basis, const Eigen::MatrixXd& M) {
  if (M.rows() != basis.ambient() || M.cols() != basis.ambient()) {
    throw ArgumentError("project_algebra: matrix size does not match basis");
  }
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(M.rows(), M.cols());
  for (int i = 0; i < basis.dim(); ++i) {
    P.noalias() += (basis.element(i).transpose() * M).trace() * basis.element(i);
  }
  return P;
}

Eigen::MatrixXd adjoint_matrix(const BasisSet& basis, const Eigen::MatrixXd& X) {
  if (X.rows() != basis.ambient() || X.cols() != basis.ambient()) {
    throw ArgumentError("adjoint_matrix: group element size does not match basis");
  }
  const Eigen::MatrixXd Xinv = X.inverse();
  Eigen::MatrixXd Ad(basis.dim(), basis.dim());
  for (int i = 0; i < basis.dim(); ++i) {
    const Eigen::MatrixXd conj = X * basis.element(i) * Xinv;
    for (int j = 0; j < basis.dim(); ++j) {
      Ad(j, i) = (basis.element(j).transpose() * conj).trace();
    }
  }
  return Ad;
}

Eigen::VectorXd adjoint_star_coords(const BasisSet& basis, const Eigen::MatrixXd& X,
                                    const Eigen::VectorXd& e) {
  return adjoint_matrix(basis, X).transpose() * e;
}

}  // namespace liecf

#pragma once

// LTI subsystem: rational transfer functions, controllable-canonical
// realization, the strict-positive-realness frequency sweep, notch-based
// loop reshaping, and the 6-channel lift H(s) M1^{-1} used on SE(3).

#include <array>
#include <complex>

#include <Eigen/Dense>

#include "liecf/errors.hpp"
#include "liecf/types.hpp"

namespace liecf {

/**
 * Proper rational transfer function with real coefficients in descending
 * powers of s. The denominator must be nonempty with a nonzero leading
 * coefficient; leading numerator coefficients that vanish are trimmed.
 */
struct TransferFunction {
  Eigen::VectorXd num;
  Eigen::VectorXd den;

  TransferFunction(Eigen::VectorXd numerator, Eigen::VectorXd denominator);

  int degree() const { return static_cast<int>(den.size()) - 1; }
  int relative_degree() const { return static_cast<int>(den.size() - num.size()); }
  bool strictly_proper() const { return num.size() < den.size(); }

  /// Value at a complex frequency (Horner evaluation of both polynomials).
  std::complex<double> eval(std::complex<double> s) const;

  /// Same function with a monic denominator.
  TransferFunction normalized() const;
};

/// State-space system x' = A x + B e, u = C x + D e together with its state.
struct StateSpace {
  Eigen::MatrixXd A;
  Eigen::MatrixXd B;
  Eigen::MatrixXd C;
  Eigen::MatrixXd D;
  Eigen::VectorXd x;

  StateSpace() = default;
  StateSpace(Eigen::MatrixXd A_, Eigen::MatrixXd B_, Eigen::MatrixXd C_, Eigen::MatrixXd D_);

  int order() const { return static_cast<int>(A.rows()); }
  int inputs() const { return static_cast<int>(D.cols()); }
  int outputs() const { return static_cast<int>(D.rows()); }
  void reset() { x.setZero(); }

  /// Transfer matrix C (jw 1 - A)^{-1} B + D at frequency w (rad/s).
  Eigen::MatrixXcd freq_response(double w) const;
};

/// Controllable canonical realization; feedthrough extracted by polynomial
/// division. A pure gain yields order zero. Throws ArgumentError if tf is
/// improper.
StateSpace tf_to_ss(const TransferFunction& tf);

/// True iff every eigenvalue of A has real part below -1e-10. Vacuously true
/// for an empty matrix.
bool is_hurwitz(const Eigen::MatrixXd& A);

/// Outcome of the strict-positive-realness test of a strictly proper system.
struct SprReport {
  bool hurwitz = false;
  bool sweep_positive = false;  // min eig of H(jw) + H^H(jw) > 0 on the grid
  bool tail_positive = false;   // w^2 * min-eig positive, non-decreasing at the grid edge
  double worst_margin = 0.0;
  double worst_freq = 0.0;
  std::array<double, 3> tail = {0.0, 0.0, 0.0};

  bool spr() const { return hurwitz && sweep_positive && tail_positive; }
};

/// Definition-style SPR check: analyticity via the Hurwitz test plus a
/// 2000-point logarithmic sweep of min-eig(H(jw) + H^H(jw)) over
/// w in [1e-4, 1e6] rad/s. The limit condition is approximated by requiring
/// w^2 * min-eig positive and non-decreasing over the three largest grid
/// frequencies; the report records the worst margin and where it occurs.
/// Requires D = 0 (throws ArgumentError otherwise).
SprReport spr_check(const StateSpace& ss);

/// Standard notch (s^2 + depth*width*s + w0^2) / (s^2 + width*s + w0^2) with
/// gain `depth` at w0 and unit gain far from it.
TransferFunction make_notch(double w0, double depth = 0.1, double width = 1.0);

/// Reshape the closed-loop sensitivity of `base` by the factor M: with
/// S(s) = s/(s + H(s)), returns H3 such that s/(s + H3) = S_base * M.
/// Throws DesignError if the result is improper.
TransferFunction notch_design(const TransferFunction& base, const TransferFunction& notch);

/// Replicate a SISO realization across six channels and weight the input by
/// M1^{-1}, realizing H(s) M1^{-1}. M1 must be symmetric positive definite.
StateSpace mimo_lift(const StateSpace& scalar, const Mat6& M1);

/// Advance the filter state by one RK4 step with zero-order-hold input and
/// return the output u = C x + D e evaluated at the updated state.
Eigen::VectorXd ss_step(StateSpace& ss, const Eigen::VectorXd& e, double dt);

/// The filter designs of the pose-estimation study.
namespace designs {
TransferFunction h1();       // static gain k = 2
TransferFunction h2();       // 9.7 / (s + 6.2)
TransferFunction notch_m();  // notch at 0.2*pi rad/s, depth 0.1
TransferFunction h3();       // h2 reshaped by notch_m
}  // namespace designs

}  // namespace liecf

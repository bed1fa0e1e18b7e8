#pragma once

// Internal-model disturbance observer: a skew-symmetric exosystem generating
// constant-plus-harmonic velocity disturbances per channel, and the
// gradient-driven adaptation of its state estimate.

#include <vector>

#include <Eigen/Dense>

#include "liecf/errors.hpp"
#include "liecf/se3.hpp"
#include "liecf/types.hpp"

namespace liecf {

/**
 * Exosystem (A_d, C_d) whose output spans bias plus harmonics at known
 * frequencies, identically structured across the six velocity channels.
 * A_d is skew-symmetric by construction; C_d has full row rank (checked).
 */
struct InternalModel {
  Eigen::MatrixXd A_d;
  Eigen::MatrixXd C_d;
  std::vector<double> freqs;
  bool has_bias = false;

  int order() const { return static_cast<int>(A_d.rows()); }
};

/// Build the block-diagonal internal model: per channel an optional 1x1 zero
/// block for bias plus a 2x2 rotation generator [[0, f],[-f, 0]] per
/// frequency, with output row [1, 1/f, 0, ...]. Frequencies must be distinct
/// and positive.
InternalModel build_internal_model(const std::vector<double>& freqs, bool include_bias);

/// Estimate of the exosystem state with its cached output.
struct DisturbanceState {
  Eigen::VectorXd x_d_hat;
  Vec6 w_hat = Vec6::Zero();

  static DisturbanceState zero(const InternalModel& model);
};

/// One RK4 step of x_d_hat' = A_d x_d_hat + rho C_d^T ebar with zero-order-hold
/// input, refreshing w_hat = C_d x_d_hat.
void disturbance_step(DisturbanceState& ds, const InternalModel& model, const Vec6& ebar,
                      double rho, double dt);

/// How the gradient input is transported before driving the adaptation.
enum class EbarMode {
  AdjointStar,  // coordinates of Ad*_That(S(e))
  Conjugation,  // coordinates of That S(e) That^{-1}
};

/// Transport the gradient coordinates by the estimate pose.
Vec6 ebar_coords(const Mat4& That, const Vec6& e, EbarMode mode);

}  // namespace liecf

#include "liecf/disturbance.hpp"

#include <cmath>

namespace liecf {

InternalModel build_internal_model(const std::vector<double>& freqs, bool include_bias) {
  for (size_t i = 0; i < freqs.size(); ++i) {
    if (freqs[i] <= 0.0) throw ArgumentError("build_internal_model: frequencies must be positive");
    for (size_t j = i + 1; j < freqs.size(); ++j) {
      if (freqs[i] == freqs[j]) {
        throw ArgumentError("build_internal_model: duplicate frequency");
      }
    }
  }
  if (!include_bias && freqs.empty()) {
    throw ArgumentError("build_internal_model: empty model");
  }

  const int per_channel = (include_bias ? 1 : 0) + 2 * static_cast<int>(freqs.size());
  const int n = 6 * per_channel;
  InternalModel model;
  model.A_d = Eigen::MatrixXd::Zero(n, n);
  model.C_d = Eigen::MatrixXd::Zero(6, n);
  model.freqs = freqs;
  model.has_bias = include_bias;

  for (int ch = 0; ch < 6; ++ch) {
    int idx = ch * per_channel;
    if (include_bias) {
      model.C_d(ch, idx) = 1.0;  // bias block: 1x1 zero generator
      ++idx;
    }
    for (double f : freqs) {
      model.A_d(idx, idx + 1) = f;
      model.A_d(idx + 1, idx) = -f;
      model.C_d(ch, idx) = 1.0 / f;
      idx += 2;
    }
  }

  // C_d full row rank is a standing hypothesis of the convergence argument.
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(model.C_d);
  if (svd.singularValues().minCoeff() <= 1e-10) {
    throw ArgumentError("build_internal_model: output matrix is rank deficient");
  }
  return model;
}

DisturbanceState DisturbanceState::zero(const InternalModel& model) {
  DisturbanceState ds;
  ds.x_d_hat = Eigen::VectorXd::Zero(model.order());
  return ds;
}

void disturbance_step(DisturbanceState& ds, const InternalModel& model, const Vec6& ebar,
                      double rho, double dt) {
  if (dt <= 0.0) throw ArgumentError("disturbance_step: dt must be positive");
  if (rho < 0.0) throw ArgumentError("disturbance_step: rho must be nonnegative");
  const Eigen::VectorXd drive = rho * (model.C_d.transpose() * ebar);
  const Eigen::VectorXd& xh = ds.x_d_hat;
  const Eigen::VectorXd k1 = model.A_d * xh + drive;
  const Eigen::VectorXd k2 = model.A_d * (xh + 0.5 * dt * k1) + drive;
  const Eigen::VectorXd k3 = model.A_d * (xh + 0.5 * dt * k2) + drive;
  const Eigen::VectorXd k4 = model.A_d * (xh + dt * k3) + drive;
  ds.x_d_hat += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  ds.w_hat = model.C_d * ds.x_d_hat;
}

Vec6 ebar_coords(const Mat4& That, const Vec6& e, EbarMode mode) {
  switch (mode) {
    case EbarMode::Conjugation:
      return se3::vee(That * se3::hat(e) * se3::inverse(That));
    case EbarMode::AdjointStar:
      return adjoint_star_coords(se3::basis(), That, e);
  }
  throw ArgumentError("ebar_coords: unknown mode");
}

}  // namespace liecf

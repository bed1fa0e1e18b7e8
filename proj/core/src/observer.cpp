#include "liecf/observer.hpp"

#include <cmath>
#include <string>

namespace liecf {

void ObserverConfig::validate() const {
  if (dt <= 0.0) throw ArgumentError("ObserverConfig: dt must be positive");
  if (rho < 0.0) throw ArgumentError("ObserverConfig: rho must be nonnegative");
  if (manifold_tol <= 0.0) throw ArgumentError("ObserverConfig: manifold_tol must be positive");
}

Observer::Observer(se3::LandmarkSet refs, StateSpace filter, ObserverConfig cfg,
                   std::optional<InternalModel> model)
    : refs_(std::move(refs)),
      filter_template_(std::move(filter)),
      cfg_(cfg),
      model_(std::move(model)) {
  cfg_.validate();
  if (filter_template_.inputs() != 6 || filter_template_.outputs() != 6) {
    throw ArgumentError("Observer: filter must have six inputs and outputs");
  }
}

ObserverState Observer::initial_state(const Mat4& Xhat0) const {
  if (!se3::is_group_element(Xhat0, cfg_.manifold_tol)) {
    throw ArgumentError("Observer: initial pose is not a group element");
  }
  ObserverState s;
  s.Xhat = Xhat0;
  s.filter = filter_template_;
  s.filter.reset();
  if (model_) s.dist = DisturbanceState::zero(*model_);
  s.t = 0.0;
  return s;
}

void Observer::step(ObserverState& state, const se3::Measurement& meas) const {
  if (std::abs(meas.t - state.t) > 1e-9 * std::max(1.0, std::abs(state.t)) + 1e-9) {
    throw ArgumentError("Observer::step: measurement time " + std::to_string(meas.t) +
                        " does not match state time " + std::to_string(state.t));
  }
  const double dt = cfg_.dt;

  const Vec6 e = se3::gradient_coords(state.Xhat, meas.y, refs_);
  const Vec6 u = ss_step(state.filter, e, dt);

  Vec6 w_hat = Vec6::Zero();
  if (state.dist) {
    const Vec6 ebar = ebar_coords(state.Xhat, e, cfg_.ebar_mode);
    disturbance_step(*state.dist, *model_, ebar, cfg_.rho, dt);
    w_hat = state.dist->w_hat;
  }

  const Mat4 right_field = meas.velocity - se3::hat(w_hat);
  switch (cfg_.integrator) {
    case Integrator::LieSplitting: {
      state.Xhat = se3::exp(-dt * se3::hat(u)) * state.Xhat * se3::exp(dt * right_field);
      break;
    }
    case Integrator::Rk4Project: {
      const Mat4 left = se3::hat(u);
      const auto field = [&](const Mat4& X) -> Mat4 { return X * right_field - left * X; };
      const Mat4& X = state.Xhat;
      const Mat4 k1 = field(X);
      const Mat4 k2 = field(X + 0.5 * dt * k1);
      const Mat4 k3 = field(X + 0.5 * dt * k2);
      const Mat4 k4 = field(X + dt * k3);
      state.Xhat = se3::project_to_group(X + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
      break;
    }
  }
  state.t += dt;

  if (!se3::is_group_element(state.Xhat, cfg_.manifold_tol) || !state.Xhat.allFinite()) {
    throw IntegrationError("Observer::step: left the group at t = " + std::to_string(state.t) +
                           " (step size too large?)");
  }
}

Mat4 group_error(const Mat4& Xhat, const Mat4& Xtrue) {
  return Xhat * se3::inverse(Xtrue);
}

double lyapunov_V1(const ObserverState& state, const Mat4& Xtrue, const se3::LandmarkSet& refs,
                   const Eigen::MatrixXd& P_f) {
  if (P_f.rows() != P_f.cols() || P_f.rows() != state.filter.order()) {
    throw ArgumentError("lyapunov_V1: P_f must be square and match the filter order");
  }
  if ((P_f - P_f.transpose()).norm() > 1e-9) {
    throw ArgumentError("lyapunov_V1: P_f must be symmetric");
  }
  if (P_f.rows() > 0) {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(P_f, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() <= 0.0) {
      throw ArgumentError("lyapunov_V1: P_f must be positive definite");
    }
  }
  const Mat4 Xtilde = group_error(state.Xhat, Xtrue);
  const double f = se3::cost_f(Xtilde, measure(Mat4::Identity(), refs), refs);
  return f + 0.5 * state.filter.x.dot(P_f * state.filter.x);
}

}  // namespace liecf

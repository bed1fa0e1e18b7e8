#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "liecf/observer.hpp"
#include "liecf/sim.hpp"
#include "test_util.hpp"

using namespace liecf;

namespace {

StateSpace identity_filter6() {
  return StateSpace(Eigen::MatrixXd(0, 0), Eigen::MatrixXd(0, 6), Eigen::MatrixXd(6, 0),
                    Eigen::MatrixXd(Mat6::Identity()));
}

StateSpace lifted(const TransferFunction& tf) {
  return mimo_lift(tf_to_ss(tf), se3::linearize_M1(se3::LandmarkSet::unit_axes()));
}

se3::Measurement make_meas(const Mat4& T, const Mat4& V, double t,
                           const se3::LandmarkSet& refs) {
  se3::Measurement m;
  m.t = t;
  m.y = se3::measure(T, refs);
  m.velocity = V;
  return m;
}

}  // namespace

TEST_CASE("perfect initialization is an equilibrium") {
  const auto refs = se3::LandmarkSet::unit_axes();
  ObserverConfig cfg;
  const Observer obs(refs, lifted(designs::h2()), cfg);

  const Mat4 V = se3::twist(Vec3(0.2, -0.1, 0.3), Vec3(0.5, 0.0, -0.2));
  std::mt19937_64 rng(51);
  Mat4 X = testutil::random_pose(rng);
  ObserverState s = obs.initial_state(X);
  for (int k = 0; k < 200; ++k) {
    const auto m = make_meas(X, V, s.t, refs);
    CHECK(se3::gradient_coords(s.Xhat, m.y, refs).norm() <= 1e-12);
    obs.step(s, m);
    X = X * se3::exp(cfg.dt * V);  // truth advanced by the same splitting step
    CHECK((group_error(s.Xhat, X) - Mat4::Identity()).norm() <= 1e-11);
    CHECK(s.filter.x.norm() <= 1e-12);
  }
}

TEST_CASE("identity filter reduces to the plain gradient observer") {
  const auto refs = se3::LandmarkSet::unit_axes();
  ObserverConfig cfg;
  cfg.dt = 1e-4;
  const Observer obs(refs, identity_filter6(), cfg);

  const int n = 2000;
  const TruthTrajectory truth = TruthTrajectory::reference(cfg.dt, n);
  ObserverState s = obs.initial_state();
  Mat4 direct = Mat4::Identity();  // hand-rolled gradient-observer update

  double worst = 0.0;
  for (int k = 0; k < n; ++k) {
    const double t = k * cfg.dt;
    const auto m = make_meas(truth.pose(k), truth.velocity(t), t, refs);
    obs.step(s, m);

    const Vec6 e = se3::gradient_coords(direct, m.y, refs);
    direct = se3::exp(-cfg.dt * se3::hat(e)) * direct * se3::exp(cfg.dt * m.velocity);
    worst = std::max(worst, (s.Xhat - direct).norm());
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("noise-free storage function is non-increasing") {
  const auto refs = se3::LandmarkSet::unit_axes();
  const Mat6 M1 = se3::linearize_M1(refs);
  ObserverConfig cfg;
  const Observer obs(refs, lifted(designs::h2()), cfg);

  const int n = 5000;
  const TruthTrajectory truth = TruthTrajectory::reference(cfg.dt, n);
  ObserverState s = obs.initial_state();

  const Eigen::MatrixXd P_f = 9.7 * M1;  // solves P B = C^T for the lifted filter
  double prev = lyapunov_V1(s, truth.pose(0), refs, P_f);
  const double f0 = prev;
  double worst_increase = 0.0;
  double worst_f_increase = 0.0;
  double prev_f = se3::cost_f(group_error(s.Xhat, truth.pose(0)),
                              se3::measure(Mat4::Identity(), refs), refs);
  for (int k = 0; k < n; ++k) {
    const double t = k * cfg.dt;
    obs.step(s, make_meas(truth.pose(k), truth.velocity(t), t, refs));
    const double v = lyapunov_V1(s, truth.pose(k + 1), refs, P_f);
    worst_increase = std::max(worst_increase, v - prev);
    prev = v;
    const double f = se3::cost_f(group_error(s.Xhat, truth.pose(k + 1)),
                                 se3::measure(Mat4::Identity(), refs), refs);
    worst_f_increase = std::max(worst_f_increase, f - prev_f);
    prev_f = f;
  }
  CHECK(worst_increase <= 1e-6);
  CHECK(prev < 0.01 * f0);
  // The cost alone may exchange energy with the filter state, but any rise
  // stays within the storage budget per step.
  CHECK(worst_f_increase <= 1e-3);
}

TEST_CASE("noise-free convergence from a unit-scale initial error") {
  const auto refs = se3::LandmarkSet::unit_axes();
  ObserverConfig cfg;
  const Observer obs(refs, lifted(designs::h2()), cfg);

  const int n = 30000;  // 30 s
  const TruthTrajectory truth = TruthTrajectory::reference(cfg.dt, n);
  Vec6 err0;
  err0 << M_PI / 6.0 * std::sqrt(2.0), 0, 0, 1, 1, 1;
  ObserverState s = obs.initial_state(se3::exp(se3::hat(err0)) * truth.pose(0));

  for (int k = 0; k < n; ++k) {
    const double t = k * cfg.dt;
    obs.step(s, make_meas(truth.pose(k), truth.velocity(t), t, refs));
  }
  const Mat4 Xtilde = group_error(s.Xhat, truth.pose(n));
  CHECK(se3::vee(se3::log(Xtilde)).norm() < 1e-3);
}

TEST_CASE("group error identities") {
  std::mt19937_64 rng(52);
  const Mat4 X = testutil::random_pose(rng);
  const Mat4 Z = testutil::random_pose(rng);
  CHECK((group_error(X, X) - Mat4::Identity()).norm() <= 1e-13);
  CHECK((group_error(Z * X, X) - Z).norm() <= 1e-12);
  const Mat4 Xhat = testutil::random_pose(rng);
  CHECK((group_error(Xhat * Z, X * Z) - group_error(Xhat, X)).norm() <= 1e-11);
}

TEST_CASE("storage function validation and special values") {
  const auto refs = se3::LandmarkSet::unit_axes();
  const Observer obs(refs, lifted(designs::h2()), ObserverConfig{});
  ObserverState s = obs.initial_state();

  CHECK(lyapunov_V1(s, Mat4::Identity(), refs, Eigen::MatrixXd(Mat6::Identity())) == 0.0);

  // With zero filter state the value is the cost itself.
  std::mt19937_64 rng(53);
  const Mat4 X = testutil::random_pose(rng);
  const double v = lyapunov_V1(s, X, refs, Eigen::MatrixXd(Mat6::Identity()));
  const double f = se3::cost_f(group_error(s.Xhat, X), se3::measure(Mat4::Identity(), refs), refs);
  CHECK(v == doctest::Approx(f).epsilon(1e-14));

  CHECK_THROWS_AS(lyapunov_V1(s, X, refs, Eigen::MatrixXd(-Mat6::Identity())), ArgumentError);
  CHECK_THROWS_AS(lyapunov_V1(s, X, refs, Eigen::MatrixXd::Identity(3, 3)), ArgumentError);
}

TEST_CASE("splitting integrator preserves the group over many steps") {
  const auto refs = se3::LandmarkSet::unit_axes();
  ObserverConfig cfg;
  const Observer obs(refs, lifted(designs::h2()), cfg);

  const int n = 100000;
  ObserverState s = obs.initial_state();
  const Mat4 V = se3::twist(Vec3(0.3, -0.2, 0.25), Vec3(0.1, 0.1, -0.3));
  std::mt19937_64 rng(54);
  Mat4 X = testutil::random_pose(rng);
  for (int k = 0; k < n; ++k) {
    obs.step(s, make_meas(X, V, s.t, refs));
    X = X * se3::exp(cfg.dt * V);
  }
  CHECK(se3::rotation_defect(s.Xhat) <= 1e-9);
  CHECK((s.Xhat.row(3) - Eigen::RowVector4d(0, 0, 0, 1)).norm() == 0.0);
}

TEST_CASE("both integrators agree to their order") {
  const auto refs = se3::LandmarkSet::unit_axes();
  ObserverConfig cfg_a;
  cfg_a.dt = 1e-3;
  ObserverConfig cfg_b = cfg_a;
  cfg_b.integrator = Integrator::Rk4Project;
  const Observer obs_a(refs, lifted(designs::h2()), cfg_a);
  const Observer obs_b(refs, lifted(designs::h2()), cfg_b);

  const int n = 2000;
  const TruthTrajectory truth = TruthTrajectory::reference(cfg_a.dt, n);
  ObserverState sa = obs_a.initial_state();
  ObserverState sb = obs_b.initial_state();
  for (int k = 0; k < n; ++k) {
    const double t = k * cfg_a.dt;
    const auto m = make_meas(truth.pose(k), truth.velocity(t), t, refs);
    obs_a.step(sa, m);
    obs_b.step(sb, m);
  }
  // First-order splitting vs fourth-order projected scheme: the gap is the
  // splitting error, O(dt) per unit time.
  CHECK((sa.Xhat - sb.Xhat).norm() <= 10.0 * cfg_a.dt);
  CHECK(se3::is_group_element(sb.Xhat));
}

TEST_CASE("error dynamics are autonomous") {
  const auto refs = se3::LandmarkSet::unit_axes();

  // Trajectory A: the reference; trajectory B: constant twist from elsewhere.
  // Identical initial group error, different truths; the group-error
  // trajectories must agree up to the integrator defect, which scales with
  // dt^2 per unit time.
  const Mat4 Vb = se3::twist(Vec3(0.05, -0.02, 0.03), Vec3(0.1, 0.2, -0.1));
  Mat4 Tb0 = Mat4::Identity();
  Tb0.topLeftCorner<3, 3>() =
      se3::exp(se3::twist(Vec3(0.3, -1.0, 0.7), Vec3::Zero())).topLeftCorner<3, 3>();
  Tb0.topRightCorner<3, 1>() = Vec3(-2.0, 0.5, 3.0);

  const double horizon = 2.0;
  auto gap_at_horizon = [&](double dt) {
    ObserverConfig cfg;
    cfg.dt = dt;
    const Observer obs(refs, lifted(designs::h2()), cfg);
    const int n = static_cast<int>(std::lround(horizon / dt));
    const TruthTrajectory ta = TruthTrajectory::reference(dt, n);
    const TruthTrajectory tb(
        Tb0, [Vb](double, Vec3& w, Vec3& v) { se3::twist_from_algebra(Vb, w, v); }, dt, n);
    const Mat4 Xtilde0 = se3::inverse(ta.pose(0));
    ObserverState sa = obs.initial_state(Xtilde0 * ta.pose(0));
    ObserverState sb = obs.initial_state(Xtilde0 * tb.pose(0));
    for (int k = 0; k < n; ++k) {
      const double t = k * dt;
      obs.step(sa, make_meas(ta.pose(k), ta.velocity(t), t, refs));
      obs.step(sb, make_meas(tb.pose(k), tb.velocity(t), t, refs));
    }
    const Mat4 ea = group_error(sa.Xhat, ta.pose(n));
    const Mat4 eb = group_error(sb.Xhat, tb.pose(n));
    return se3::vee(se3::log(ea * se3::inverse(eb))).norm();
  };

  const double coarse = gap_at_horizon(2e-3);
  const double fine = gap_at_horizon(1e-3);
  // The splitting's trajectory-dependent defect is first order: ~0.01 dt per
  // unit time for these trajectories, halving with dt.
  CHECK(fine <= 0.02 * 1e-3 * horizon);
  CHECK(coarse / fine > 1.6);
  CHECK(coarse / fine < 4.5);
}

TEST_CASE("step validation") {
  const auto refs = se3::LandmarkSet::unit_axes();
  const Observer obs(refs, lifted(designs::h2()), ObserverConfig{});
  ObserverState s = obs.initial_state();

  auto m = make_meas(Mat4::Identity(), Mat4::Zero(), 0.5, refs);
  CHECK_THROWS_AS(obs.step(s, m), ArgumentError);  // wrong timestamp

  m.t = 0.0;
  s.Xhat.topLeftCorner<3, 3>() *= 1.001;  // corrupted estimate
  CHECK_THROWS_AS(obs.step(s, m), IntegrationError);

  CHECK_THROWS_AS(obs.initial_state(2.0 * Mat4::Identity()), ArgumentError);
  CHECK_THROWS_AS(Observer(refs, tf_to_ss(designs::h2()), ObserverConfig{}), ArgumentError);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstring>
#include <sstream>

#include "liecf/sim.hpp"
#include "test_util.hpp"

using namespace liecf;

namespace {

// Closed form of the reference trajectory: the body rates point along
// (1,1,1) for all time, so the rotation is R0 exp(theta(t) skew(1,1,1)) with
// theta(t) = -pi/6 sin(pi t / 10), and the translation integrates to
// r0 + 0.1 theta(t) R0 (1,1,1).
Mat4 reference_closed_form(double t) {
  const Mat3 R0 = se3::exp(se3::twist(Vec3(M_PI / 6.0, 0, 0), Vec3::Zero())).topLeftCorner<3, 3>();
  const double theta = -M_PI / 6.0 * std::sin(M_PI * t / 10.0);
  Mat4 T = Mat4::Identity();
  T.topLeftCorner<3, 3>() =
      R0 * se3::exp(se3::twist(theta * Vec3::Ones(), Vec3::Zero())).topLeftCorner<3, 3>();
  T.topRightCorner<3, 1>() = Vec3(1, 1, 1) + 0.1 * theta * (R0 * Vec3::Ones());
  return T;
}

}  // namespace

TEST_CASE("reference trajectory initial conditions") {
  const TruthTrajectory truth = TruthTrajectory::reference(1e-3, 10);
  const Mat4 T0 = truth.pose(0);
  const Mat3 R0 = se3::exp(se3::twist(Vec3(M_PI / 6.0, 0, 0), Vec3::Zero())).topLeftCorner<3, 3>();
  CHECK((T0.topLeftCorner<3, 3>() - R0).norm() <= 1e-15);
  CHECK((T0.topRightCorner<3, 1>() - Vec3(1, 1, 1)).norm() == 0.0);

  Vec3 omega, v;
  se3::twist_from_algebra(truth.velocity(0.0), omega, v);
  const double g0 = -M_PI * M_PI / 60.0;
  CHECK((omega - g0 * Vec3::Ones()).norm() <= 1e-15);
  CHECK((v - 0.1 * g0 * Vec3::Ones()).norm() <= 1e-15);
}

TEST_CASE("reference trajectory matches the closed form") {
  const double dt = 1e-2;
  const int n = 1000;  // 10 s
  const TruthTrajectory truth = TruthTrajectory::reference(dt, n);
  for (int k : {100, 500, 1000}) {
    CHECK((truth.pose(k) - reference_closed_form(k * dt)).norm() <= 1e-9);
  }
}

TEST_CASE("truth integration converges under substep refinement") {
  const double dt = 1e-2;
  const int n = 1000;
  const TruthTrajectory coarse = TruthTrajectory::reference(dt, n, 10);
  const TruthTrajectory fine = TruthTrajectory::reference(dt, n, 20);
  CHECK((coarse.pose(n) - fine.pose(n)).norm() <= 1e-10);
}

TEST_CASE("noise synthesis per case") {
  ScenarioConfig cfg;
  cfg.seed = 7;
  const NoiseModel model(cfg.seed, cfg.noise);

  for (double t : {0.0, 0.31, 2.7, 55.0}) {
    CHECK(model.velocity_noise(t, CaseId::Case1).norm() == 0.0);

    // Harmonic-sum amplitude bound per channel.
    const Vec6 w2 = model.velocity_noise(t, CaseId::Case2);
    CHECK(w2.cwiseAbs().maxCoeff() <= std::sqrt(2.0) * 0.2 + 1e-12);

    const Vec6 w2b = model.velocity_noise(t, CaseId::Case2Bias);
    CHECK((w2b - w2 - model.bias()).norm() <= 1e-15);
    CHECK((model.velocity_noise(t, CaseId::Case3) - w2b).norm() == 0.0);
  }

  // Landmark noise: combination of unit-direction harmonics, so each n_j is
  // bounded by the sum of its signal amplitudes.
  for (double t : {0.0, 0.5, 9.9}) {
    const auto n = model.vector_noise(t);
    for (const auto& nj : n) CHECK(nj.norm() <= cfg.noise.vector_components * 0.4 + 1e-12);
  }
}

TEST_CASE("noise is a pure function of seed and time") {
  ScenarioConfig cfg;
  cfg.seed = 1234;
  const auto [n_a, w_a] = gen_noise(cfg, 1.75);
  const auto [n_b, w_b] = gen_noise(cfg, 1.75);
  for (int j = 0; j < 3; ++j) {
    CHECK(std::memcmp(n_a[static_cast<size_t>(j)].data(), n_b[static_cast<size_t>(j)].data(),
                      6 * sizeof(double)) == 0);
  }
  CHECK(std::memcmp(w_a.data(), w_b.data(), 6 * sizeof(double)) == 0);

  cfg.seed = 1235;
  const auto [n_c, w_c] = gen_noise(cfg, 1.75);
  CHECK((n_c[0] - n_a[0]).norm() > 0.0);
}

TEST_CASE("metric extraction") {
  const auto m0 = compute_metrics(Mat4::Identity());
  CHECK(m0.phi_err == 0.0);
  CHECK(m0.pos_err == 0.0);

  Mat4 T = Mat4::Identity();
  T.topRightCorner<3, 1>() = Vec3(3, 4, 0);
  const auto m1 = compute_metrics(T);
  CHECK(m1.phi_err == 0.0);
  CHECK(m1.pos_err == doctest::Approx(5.0).epsilon(1e-15));

  for (double angle : {1e-7, 0.3, 2.0, M_PI - 1e-3}) {
    const Mat4 R = se3::exp(se3::twist(angle * Vec3::UnitX(), Vec3::Zero()));
    CHECK(compute_metrics(R).phi_err == doctest::Approx(angle).epsilon(1e-10));
  }
  const Mat4 Rpi = se3::exp(se3::twist(M_PI * Vec3::UnitY(), Vec3::Zero()));
  CHECK(compute_metrics(Rpi).near_pi);
}

TEST_CASE("noise-free convergence of the reference scenario") {
  ScenarioConfig cfg;
  cfg.case_id = CaseId::Case1;
  cfg.filter_choice = FilterChoice::H2;
  cfg.duration = 30.0;
  cfg.noise.vector_amp_lo = 0.0;
  cfg.noise.vector_amp_hi = 0.0;
  const auto records = run_case(cfg);
  CHECK(records.size() == 30001);
  CHECK(records.front().phi_err == doctest::Approx(M_PI / 6.0).epsilon(1e-12));
  CHECK(records.back().phi_err < 1e-3);
  CHECK(records.back().pos_err < 1e-3);
}

TEST_CASE("recorded cost matches an independent norm evaluation") {
  ScenarioConfig cfg;
  cfg.duration = 2.0;
  cfg.seed = 99;
  const auto refs = se3::LandmarkSet::unit_axes();
  const NoiseModel noise(cfg.seed, cfg.noise);

  std::vector<Mat4> xhats;
  std::vector<Mat4> truths;
  const auto records = run_case(cfg, [&](const ObserverState& s, const Mat4& T) {
    xhats.push_back(s.Xhat);
    truths.push_back(T);
  });
  REQUIRE(records.size() == xhats.size());

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<size_t> pick(0, records.size() - 1);
  for (int trial = 0; trial < 10; ++trial) {
    const size_t k = pick(rng);
    const double t = records[k].t;
    const auto nj = noise.vector_noise(t);
    const auto y = se3::measure(truths[k], refs, {nj[0], nj[1], nj[2]});
    const Mat4 inv = se3::inverse(xhats[k]);
    double f = 0.0;
    for (int j = 0; j < 3; ++j) {
      f += 0.5 * (inv * refs.ref(j) - y[static_cast<size_t>(j)]).squaredNorm();
    }
    CHECK(std::abs(f - records[k].f_val) <= 1e-10 * std::max(1.0, f));
  }
}

TEST_CASE("identical configurations give identical records") {
  ScenarioConfig cfg;
  cfg.case_id = CaseId::Case2;
  cfg.filter_choice = FilterChoice::H3;
  cfg.duration = 1.0;
  cfg.seed = 42;
  const auto a = run_case(cfg);
  const auto b = run_case(cfg);
  REQUIRE(a.size() == b.size());
  CHECK(std::memcmp(a.data(), b.data(), a.size() * sizeof(RunRecord)) == 0);
}

TEST_CASE("csv serialization contract") {
  ScenarioConfig cfg;
  cfg.duration = 0.01;
  const auto records = run_case(cfg);
  std::ostringstream os;
  write_csv(os, records);
  const std::string text = os.str();

  CHECK(text.rfind("t,phi_err,pos_err,wtilde_norm,f_val,xf_norm\n", 0) == 0);
  CHECK(text.find('\r') == std::string::npos);

  // Full-precision round trip of the second data row.
  std::istringstream is(text);
  std::string line;
  std::getline(is, line);
  std::getline(is, line);
  std::getline(is, line);
  double vals[6];
  CHECK(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf", &vals[0], &vals[1], &vals[2],
                    &vals[3], &vals[4], &vals[5]) == 6);
  CHECK(vals[0] == records[1].t);
  CHECK(vals[1] == records[1].phi_err);
  CHECK(vals[4] == records[1].f_val);
}

TEST_CASE("scenario validation") {
  ScenarioConfig cfg;
  cfg.dt = -1.0;
  CHECK_THROWS_AS(cfg.validate(), ArgumentError);
  cfg = ScenarioConfig{};
  cfg.duration = 1e6;
  cfg.dt = 1e-3;
  CHECK_THROWS_AS(cfg.validate(), ArgumentError);  // > 1e7 steps
  cfg = ScenarioConfig{};
  cfg.filter_choice = FilterChoice::Custom;
  CHECK_THROWS_AS(cfg.validate(), ArgumentError);  // missing coefficients
}

TEST_CASE("tail summary windows") {
  std::vector<RunRecord> recs;
  for (int k = 0; k <= 100; ++k) {
    RunRecord r;
    r.t = 0.1 * k;
    r.phi_err = (r.t >= 8.0) ? 2.0 : 100.0;
    r.pos_err = 1.0;
    recs.push_back(r);
  }
  const TailSummary s = summarize(recs);  // last two seconds: t in [8, 10]
  CHECK(s.mean_phi_err == doctest::Approx(2.0));
  CHECK(s.mean_pos_err == doctest::Approx(1.0));
}

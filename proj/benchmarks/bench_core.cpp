#include <benchmark/benchmark.h>

#include <random>

#include "liecf/lti.hpp"
#include "liecf/observer.hpp"
#include "liecf/se3.hpp"
#include "liecf/sim.hpp"

using namespace liecf;

namespace {

Vec6 random_coords(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Vec6 a;
  for (int i = 0; i < 6; ++i) a[i] = unif(rng);
  return a;
}

void BM_Se3Exp(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const Mat4 M = se3::hat(random_coords(rng));
  for (auto _ : state) {
    benchmark::DoNotOptimize(se3::exp(M));
  }
}
BENCHMARK(BM_Se3Exp);

void BM_Se3Log(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const Mat4 T = se3::exp(se3::hat(random_coords(rng)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(se3::log(T));
  }
}
BENCHMARK(BM_Se3Log);

void BM_GradientCoords(benchmark::State& state) {
  const auto refs = se3::LandmarkSet::unit_axes();
  std::mt19937_64 rng(3);
  const Mat4 That = se3::exp(se3::hat(random_coords(rng)));
  const Mat4 T = se3::exp(se3::hat(random_coords(rng)));
  const auto y = se3::measure(T, refs);
  for (auto _ : state) {
    benchmark::DoNotOptimize(se3::gradient_coords(That, y, refs));
  }
}
BENCHMARK(BM_GradientCoords);

void BM_SprSweep(benchmark::State& state) {
  const StateSpace ss = tf_to_ss(designs::h3());
  StateSpace strict = ss;
  strict.D.setZero();
  for (auto _ : state) {
    benchmark::DoNotOptimize(spr_check(strict));
  }
}
BENCHMARK(BM_SprSweep)->Unit(benchmark::kMillisecond);

void BM_ObserverStep(benchmark::State& state) {
  const auto refs = se3::LandmarkSet::unit_axes();
  const Mat6 M1 = se3::linearize_M1(refs);
  ObserverConfig cfg;
  const Observer obs(refs, mimo_lift(tf_to_ss(designs::h2()), M1), cfg);
  ObserverState s = obs.initial_state();

  const TruthTrajectory truth = TruthTrajectory::reference(cfg.dt, 1);
  se3::Measurement m;
  m.y = se3::measure(truth.pose(0), refs);
  m.velocity = truth.velocity(0.0);
  for (auto _ : state) {
    m.t = s.t;
    obs.step(s, m);
  }
}
BENCHMARK(BM_ObserverStep);

void BM_DisturbanceStep(benchmark::State& state) {
  const InternalModel model = build_internal_model({0.2 * M_PI}, true);
  DisturbanceState ds = DisturbanceState::zero(model);
  const Vec6 ebar = Vec6::Constant(0.1);
  for (auto _ : state) {
    disturbance_step(ds, model, ebar, 0.5, 1e-3);
  }
}
BENCHMARK(BM_DisturbanceStep);

void BM_RunCaseSecond(benchmark::State& state) {
  ScenarioConfig cfg;
  cfg.case_id = CaseId::Case3;
  cfg.filter_choice = FilterChoice::H2;
  cfg.duration = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_case(cfg));
  }
}
BENCHMARK(BM_RunCaseSecond)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

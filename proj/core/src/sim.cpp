#include "liecf/sim.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>

namespace liecf {

void ScenarioConfig::validate() const {
  if (duration <= 0.0) throw ArgumentError("ScenarioConfig: duration must be positive");
  if (dt <= 0.0) throw ArgumentError("ScenarioConfig: dt must be positive");
  if (duration / dt > 1e7) throw ArgumentError("ScenarioConfig: more than 1e7 steps requested");
  if (noise.vector_components < 0) {
    throw ArgumentError("ScenarioConfig: vector_components must be nonnegative");
  }
  if (truth_substeps < 1) throw ArgumentError("ScenarioConfig: truth_substeps must be >= 1");
  if (filter_choice == FilterChoice::Custom && !custom_filter) {
    throw ArgumentError("ScenarioConfig: custom filter choice requires coefficients");
  }
}

int ScenarioConfig::steps() const { return static_cast<int>(std::lround(duration / dt)); }

TruthTrajectory::TruthTrajectory(const Mat4& T0, VelocityFn velocity, double dt, int steps,
                                 int substeps)
    : velocity_(std::move(velocity)), dt_(dt) {
  if (dt <= 0.0 || steps < 0 || substeps < 1) {
    throw ArgumentError("TruthTrajectory: invalid grid");
  }
  table_.reserve(static_cast<size_t>(steps) + 1);
  Mat4 T = T0;
  table_.push_back(T);
  const double h = dt / substeps;
  for (int k = 0; k < steps; ++k) {
    double t = k * dt;
    for (int s = 0; s < substeps; ++s) {
      const auto field = [&](double tau, const Mat4& X) { return Mat4(X * this->velocity(tau)); };
      const Mat4 k1 = field(t, T);
      const Mat4 k2 = field(t + 0.5 * h, T + 0.5 * h * k1);
      const Mat4 k3 = field(t + 0.5 * h, T + 0.5 * h * k2);
      const Mat4 k4 = field(t + h, T + h * k3);
      T += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      t += h;
    }
    table_.push_back(T);
  }
}

TruthTrajectory TruthTrajectory::reference(double dt, int steps, int substeps) {
  Mat4 T0 = Mat4::Identity();
  T0.topLeftCorner<3, 3>() =
      se3::exp(se3::twist(Vec3(M_PI / 6.0, 0, 0), Vec3::Zero())).topLeftCorner<3, 3>();
  T0.topRightCorner<3, 1>() = Vec3(1, 1, 1);
  auto fn = [](double t, Vec3& omega, Vec3& v) {
    const double g = -M_PI * M_PI * std::cos(M_PI / 10.0 * t) / 60.0;
    omega = g * Vec3::Ones();
    v = 0.1 * g * Vec3::Ones();
  };
  return TruthTrajectory(T0, fn, dt, steps, substeps);
}

Mat4 TruthTrajectory::velocity(double t) const {
  Vec3 omega, v;
  velocity_(t, omega, v);
  return se3::twist(omega, v);
}

NoiseModel::NoiseModel(std::uint64_t seed, const NoiseParams& p) {
  std::mt19937_64 rng(seed);
  auto uniform = [&rng](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  for (int i = 0; i < 6; ++i) alpha_[i] = uniform(p.velocity_alpha_lo, p.velocity_alpha_hi);
  for (int i = 0; i < 6; ++i) beta_[i] = uniform(p.velocity_beta_lo, p.velocity_beta_hi);
  for (int i = 0; i < 6; ++i) bias_[i] = uniform(p.velocity_bias_lo, p.velocity_bias_hi);

  for (auto& landmark : vec_) {
    landmark.resize(static_cast<size_t>(p.vector_components));
    for (auto& h : landmark) {
      h.freq = uniform(p.vector_freq_lo, p.vector_freq_hi);
      h.amp = uniform(p.vector_amp_lo, p.vector_amp_hi);
      h.phase = uniform(0.0, 2.0 * M_PI);
      // Direction on the unit sphere in coordinate space.
      double norm2 = 0.0;
      do {
        for (int i = 0; i < 6; ++i) h.dir[i] = uniform(-1.0, 1.0);
        norm2 = h.dir.squaredNorm();
      } while (norm2 < 1e-3 || norm2 > 1.0);
      h.dir /= std::sqrt(norm2);
    }
  }
}

std::array<Vec6, 3> NoiseModel::vector_noise(double t) const {
  std::array<Vec6, 3> n;
  for (size_t j = 0; j < 3; ++j) {
    n[j].setZero();
    for (const auto& h : vec_[j]) {
      n[j] += (h.amp * std::sin(h.freq * t + h.phase)) * h.dir;
    }
  }
  return n;
}

Vec6 NoiseModel::velocity_noise(double t, CaseId c) const {
  if (c == CaseId::Case1) return Vec6::Zero();
  const double w0 = 0.2 * M_PI;
  Vec6 w = alpha_ * std::sin(w0 * t) + beta_ * std::cos(w0 * t);
  if (c == CaseId::Case2Bias || c == CaseId::Case3) w += bias_;
  return w;
}

std::pair<std::array<Vec6, 3>, Vec6> gen_noise(const ScenarioConfig& cfg, double t) {
  const NoiseModel model(cfg.seed, cfg.noise);
  return {model.vector_noise(t), model.velocity_noise(t, cfg.case_id)};
}

StateSpace build_case_filter(const ScenarioConfig& cfg, const Mat6& M1) {
  const TransferFunction tf = [&] {
    switch (cfg.filter_choice) {
      case FilterChoice::H1:
        return designs::h1();
      case FilterChoice::H2:
        return designs::h2();
      case FilterChoice::H3:
        return designs::h3();
      case FilterChoice::Custom:
        if (!cfg.custom_filter) {
          throw ArgumentError("build_case_filter: custom filter coefficients missing");
        }
        return *cfg.custom_filter;
    }
    throw ArgumentError("build_case_filter: unknown filter choice");
  }();
  return mimo_lift(tf_to_ss(tf), M1);
}

MetricSample compute_metrics(const Mat4& Xtilde) {
  MetricSample m;
  m.phi_err = se3::rotation_angle(Xtilde);
  m.pos_err = Xtilde.topRightCorner<3, 1>().norm();
  m.near_pi = (M_PI - m.phi_err) < 1e-6;
  return m;
}

std::vector<RunRecord> run_case(const ScenarioConfig& cfg, const StepCallback& callback) {
  cfg.validate();
  const int n = cfg.steps();
  const auto refs = se3::LandmarkSet::unit_axes();
  const Mat6 M1 = se3::linearize_M1(refs);

  ObserverConfig ocfg;
  ocfg.integrator = cfg.integrator;
  ocfg.dt = cfg.dt;
  ocfg.ebar_mode = cfg.ebar_mode;
  ocfg.rho = cfg.disturbance.rho;

  std::optional<InternalModel> model;
  if (cfg.case_id == CaseId::Case3) {
    model = build_internal_model(cfg.disturbance.freqs, cfg.disturbance.bias);
  }
  const Observer observer(refs, build_case_filter(cfg, M1), ocfg, model);
  ObserverState state = observer.initial_state();

  const TruthTrajectory truth = TruthTrajectory::reference(cfg.dt, n, cfg.truth_substeps);
  const NoiseModel noise(cfg.seed, cfg.noise);

  std::vector<RunRecord> records;
  records.reserve(static_cast<size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    const double t = k * cfg.dt;
    const Mat4& T = truth.pose(k);
    const std::array<Vec6, 3> nj = noise.vector_noise(t);
    const Vec6 w = noise.velocity_noise(t, cfg.case_id);

    se3::Measurement meas;
    meas.t = t;
    meas.y = se3::measure(T, refs, {nj[0], nj[1], nj[2]});
    meas.velocity = truth.velocity(t) + se3::hat(w);

    const Mat4 Xtilde = group_error(state.Xhat, T);
    const MetricSample metric = compute_metrics(Xtilde);
    RunRecord rec;
    rec.t = t;
    rec.phi_err = metric.phi_err;
    rec.pos_err = metric.pos_err;
    rec.wtilde_norm = (w - (state.dist ? state.dist->w_hat : Vec6::Zero())).norm();
    rec.f_val = se3::cost_f(state.Xhat, meas.y, refs);
    rec.xf_norm = state.filter.x.norm();
    if (!std::isfinite(rec.phi_err) || !std::isfinite(rec.pos_err) ||
        !std::isfinite(rec.f_val) || !std::isfinite(rec.xf_norm)) {
      throw IntegrationError("run_case: non-finite record at t = " + std::to_string(t));
    }
    records.push_back(rec);
    if (callback) callback(state, T);

    if (k < n) observer.step(state, meas);
  }
  return records;
}

void write_csv(std::ostream& os, const std::vector<RunRecord>& records) {
  os << "t,phi_err,pos_err,wtilde_norm,f_val,xf_norm\n";
  char buf[160];
  for (const auto& r : records) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.t, r.phi_err,
                  r.pos_err, r.wtilde_norm, r.f_val, r.xf_norm);
    os << buf;
  }
}

TailSummary summarize(const std::vector<RunRecord>& records, double window) {
  TailSummary s;
  if (records.empty()) return s;
  const double t_end = records.back().t;
  double n = 0.0;
  for (const auto& r : records) {
    if (r.t >= t_end - window) {
      s.mean_phi_err += r.phi_err;
      s.mean_pos_err += r.pos_err;
      n += 1.0;
    }
  }
  if (n > 0.0) {
    s.mean_phi_err /= n;
    s.mean_pos_err /= n;
  }
  s.first_wtilde = records.front().wtilde_norm;
  s.last_wtilde = records.back().wtilde_norm;
  return s;
}

}  // namespace liecf

// Command-line front end: run simulation scenarios, check filter designs for
// strict positive realness, validate the cost gradient against finite
// differences, and compare the three study filters on one scenario.

#include <fstream>
#include <future>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"

#include "liecf/config.hpp"
#include "liecf/lti.hpp"
#include "liecf/observer.hpp"
#include "liecf/se3.hpp"
#include "liecf/sim.hpp"

namespace {

using namespace liecf;

struct CommonOpts {
  std::string config_path;
  std::string output_path;
  std::string filter;
  std::string case_name;
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool verbose = false;
};

ScenarioConfig load_scenario(const CommonOpts& o) {
  ScenarioConfig sc;
  if (!o.config_path.empty()) {
    sc = scenario_from_config(Config::from_file(o.config_path));
  }
  if (!o.case_name.empty()) {
    if (o.case_name == "1") {
      sc.case_id = CaseId::Case1;
    } else if (o.case_name == "2") {
      sc.case_id = CaseId::Case2;
    } else if (o.case_name == "2b") {
      sc.case_id = CaseId::Case2Bias;
    } else if (o.case_name == "3") {
      sc.case_id = CaseId::Case3;
    } else {
      throw ArgumentError("unknown --case '" + o.case_name + "' (use 1, 2, 2b or 3)");
    }
  }
  if (!o.filter.empty()) {
    if (o.filter == "h1") {
      sc.filter_choice = FilterChoice::H1;
    } else if (o.filter == "h2") {
      sc.filter_choice = FilterChoice::H2;
    } else if (o.filter == "h3") {
      sc.filter_choice = FilterChoice::H3;
    } else {
      throw ArgumentError("unknown --filter '" + o.filter + "' (use h1, h2 or h3)");
    }
  }
  if (o.seed_set) sc.seed = o.seed;
  return sc;
}

const char* filter_name(FilterChoice c) {
  switch (c) {
    case FilterChoice::H1:
      return "h1";
    case FilterChoice::H2:
      return "h2";
    case FilterChoice::H3:
      return "h3";
    case FilterChoice::Custom:
      return "custom";
  }
  return "?";
}

int cmd_run(const CommonOpts& o) {
  ScenarioConfig sc = load_scenario(o);
  if (o.verbose) {
    std::cerr << "running " << filter_name(sc.filter_choice) << ", " << sc.duration << " s at dt "
              << sc.dt << ", seed " << sc.seed << "\n";
  }
  const auto records = run_case(sc);
  const std::string out = o.output_path.empty() ? "run.csv" : o.output_path;
  std::ofstream os(out, std::ios::binary);
  if (!os) throw ArgumentError("cannot open output file '" + out + "'");
  write_csv(os, records);
  os.close();

  const TailSummary tail = summarize(records);
  std::cout << "wrote " << records.size() << " records to " << out << "\n";
  std::cout << "final 2 s means: phi_err = " << tail.mean_phi_err
            << " rad, pos_err = " << tail.mean_pos_err << " m\n";
  if (sc.case_id == CaseId::Case3) {
    std::cout << "wtilde_norm: initial " << tail.first_wtilde << ", final " << tail.last_wtilde
              << "\n";
  }
  return 0;
}

TransferFunction filter_from_opts(const CommonOpts& o, const std::vector<double>& num,
                                  const std::vector<double>& den) {
  if (!num.empty() || !den.empty()) {
    if (num.empty() || den.empty()) {
      throw ArgumentError("check-spr: both --num and --den are required for a custom filter");
    }
    return TransferFunction(
        Eigen::Map<const Eigen::VectorXd>(num.data(), static_cast<Eigen::Index>(num.size())),
        Eigen::Map<const Eigen::VectorXd>(den.data(), static_cast<Eigen::Index>(den.size())));
  }
  if (!o.config_path.empty()) {
    const ScenarioConfig sc = scenario_from_config(Config::from_file(o.config_path));
    if (sc.custom_filter) return *sc.custom_filter;
    switch (sc.filter_choice) {
      case FilterChoice::H1:
        return designs::h1();
      case FilterChoice::H2:
        return designs::h2();
      case FilterChoice::H3:
        return designs::h3();
      default:
        break;
    }
    throw ArgumentError("check-spr: config names no filter");
  }
  if (o.filter == "h1") return designs::h1();
  if (o.filter == "h2" || o.filter.empty()) return designs::h2();
  if (o.filter == "h3") return designs::h3();
  throw ArgumentError("unknown --filter '" + o.filter + "'");
}

int cmd_check_spr(const CommonOpts& o, const std::vector<double>& num,
                  const std::vector<double>& den) {
  const TransferFunction tf = filter_from_opts(o, num, den);
  const StateSpace full = tf_to_ss(tf);
  const double feedthrough = full.D(0, 0);

  StateSpace strict = full;
  strict.D.setZero();
  const SprReport rep = spr_check(strict);

  std::cout << "filter: [" << tf.num.transpose() << "] / [" << tf.den.transpose() << "]\n";
  std::cout << "feedthrough D = " << feedthrough << "\n";
  std::cout << "strictly proper part order = " << strict.order() << "\n";
  std::cout << "A Hurwitz: " << (rep.hurwitz ? "yes" : "no") << "\n";
  std::cout << "sweep min eig(H + H^H) = " << rep.worst_margin << " at w = " << rep.worst_freq
            << " rad/s\n";
  std::cout << "w^2-scaled tail (three largest w): " << rep.tail[0] << ", " << rep.tail[1] << ", "
            << rep.tail[2] << (rep.tail_positive ? " (positive, non-decreasing)" : " (violated)")
            << "\n";
  const bool pass = rep.spr() && feedthrough >= 0.0;
  std::cout << "verdict: " << (rep.spr() ? "SPR" : "not SPR") << (feedthrough >= 0.0 ? "" : ", D < 0")
            << (pass ? "" : " -> FAIL") << "\n";
  return pass ? 0 : 1;
}

int cmd_check_gradient(const std::vector<std::string>& landmark_args, int samples) {
  std::vector<Vec4> refs_raw;
  for (const auto& arg : landmark_args) {
    std::istringstream ss(arg);
    Vec4 p(0, 0, 0, 1);
    char comma = 0;
    if (!(ss >> p[0] >> comma >> p[1] >> comma >> p[2])) {
      throw ArgumentError("check-gradient: landmark must be 'x,y,z', got '" + arg + "'");
    }
    refs_raw.push_back(p);
  }
  const se3::LandmarkSet refs =
      refs_raw.empty() ? se3::LandmarkSet::unit_axes() : se3::LandmarkSet(refs_raw);

  const Mat6 M1 = se3::linearize_M1(refs);
  const Eigen::SelfAdjointEigenSolver<Mat6> eig(M1, Eigen::EigenvaluesOnly);

  std::mt19937_64 rng(20240211);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  const double h = 1e-5;
  double max_rel = 0.0;
  for (int s = 0; s < samples; ++s) {
    Vec6 a, b;
    for (int i = 0; i < 6; ++i) a[i] = unif(rng);
    for (int i = 0; i < 6; ++i) b[i] = unif(rng);
    const Mat4 That = se3::exp(se3::hat(a));
    const Mat4 T = se3::exp(se3::hat(b));
    const auto y = se3::measure(T, refs);
    const Vec6 e = se3::gradient_coords(That, y, refs);
    Vec6 g;
    for (int i = 0; i < 6; ++i) {
      const Vec6 d = Vec6::Unit(i);
      const double fp = se3::cost_f(se3::exp(se3::hat(h * d)) * That, y, refs);
      const double fm = se3::cost_f(se3::exp(se3::hat(-h * d)) * That, y, refs);
      g[i] = (fp - fm) / (2.0 * h);
    }
    max_rel = std::max(max_rel, (g - e).norm() / std::max(1.0, e.norm()));
  }

  std::cout << "gradient vs central differences over " << samples
            << " poses: max relative error = " << max_rel << "\n";
  std::cout << "M1 eigenvalues: " << eig.eigenvalues().transpose() << "\n";
  const bool pass = max_rel < 1e-5 && eig.eigenvalues().minCoeff() > 0.0;
  std::cout << "verdict: " << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? 0 : 1;
}

int cmd_compare(const CommonOpts& o) {
  ScenarioConfig base = load_scenario(o);
  const FilterChoice choices[3] = {FilterChoice::H1, FilterChoice::H2, FilterChoice::H3};

  std::array<std::future<TailSummary>, 3> futures;
  for (int i = 0; i < 3; ++i) {
    ScenarioConfig sc = base;
    sc.filter_choice = choices[i];
    futures[static_cast<size_t>(i)] = std::async(std::launch::async, [sc] {
      return summarize(run_case(sc));
    });
  }

  std::ostringstream table;
  table << "filter  mean_phi_err  mean_pos_err\n";
  for (int i = 0; i < 3; ++i) {
    const TailSummary t = futures[static_cast<size_t>(i)].get();
    char line[96];
    std::snprintf(line, sizeof(line), "%-6s  %12.6g  %12.6g\n", filter_name(choices[i]),
                  t.mean_phi_err, t.mean_pos_err);
    table << line;
  }
  std::cout << table.str();
  if (!o.output_path.empty()) {
    std::ofstream os(o.output_path, std::ios::binary);
    if (!os) throw ArgumentError("cannot open output file '" + o.output_path + "'");
    os << table.str();
  }
  return 0;
}

std::string config_key_footer() {
  std::string s = "Config file keys (one 'key = value' per line, '#' comments):\n";
  for (const auto& [key, doc] : config_key_docs()) {
    s += "  " + key + std::string(key.size() < 30 ? 30 - key.size() : 1, ' ') + doc + "\n";
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonlinear complementary filtering on SE(3): scenario simulator and design checks"};
  app.require_subcommand(1);
  app.footer(config_key_footer());

  CommonOpts opts;
  app.add_flag("-v,--verbose", opts.verbose, "Progress output on stderr");

  auto add_common = [&](CLI::App* sub, bool with_scenario) {
    sub->add_option("--config", opts.config_path, "Configuration file");
    sub->add_option("--output", opts.output_path, "Output path");
    if (with_scenario) {
      sub->add_option("--seed", opts.seed, "Noise seed override")
          ->each([&](const std::string&) { opts.seed_set = true; });
      sub->add_option("--filter", opts.filter, "Filter choice: h1, h2, h3");
      sub->add_option("--case", opts.case_name, "Scenario case: 1, 2, 2b, 3");
    }
  };

  CLI::App* run = app.add_subcommand("run", "Run one scenario and write the metric CSV");
  add_common(run, true);

  CLI::App* spr = app.add_subcommand("check-spr", "Strict-positive-realness report for a filter");
  std::vector<double> spr_num, spr_den;
  add_common(spr, false);
  spr->add_option("--filter", opts.filter, "Filter choice: h1, h2, h3");
  spr->add_option("--num", spr_num, "Custom numerator coefficients, descending powers")
      ->delimiter(',');
  spr->add_option("--den", spr_den, "Custom denominator coefficients")->delimiter(',');

  CLI::App* grad = app.add_subcommand("check-gradient",
                                      "Finite-difference gradient gate and gain-matrix check");
  std::vector<std::string> landmarks;
  int samples = 200;
  grad->add_option("--landmark", landmarks, "Landmark 'x,y,z' (repeat; default: unit axes)");
  grad->add_option("--samples", samples, "Number of random pose pairs")->default_val(200);

  CLI::App* cmp = app.add_subcommand("compare", "Run h1/h2/h3 on one scenario and summarize");
  add_common(cmp, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (run->parsed()) return cmd_run(opts);
    if (spr->parsed()) return cmd_check_spr(opts, spr_num, spr_den);
    if (grad->parsed()) return cmd_check_gradient(landmarks, samples);
    if (cmp->parsed()) return cmd_compare(opts);
  } catch (const DegenerateLandmarkError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const IntegrationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

#include "liecf/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace liecf {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

bool parse_double(const std::string& s, double& out) {
  try {
    size_t used = 0;
    out = std::stod(s, &used);
    return used == s.size();
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

Config Config::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ArgumentError("config: cannot open file '" + path + "'");
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return from_string(buf.str(), path);
}

Config Config::from_string(const std::string& text, const std::string& name) {
  Config cfg;
  cfg.name_ = name;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ArgumentError(name + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ArgumentError(name + ":" + std::to_string(lineno) + ": empty key or value");
    }
    if (cfg.entries_.count(key)) {
      throw ArgumentError(name + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
    cfg.entries_[key] = Entry{value, lineno};
  }
  return cfg;
}

const Config::Entry* Config::find(const std::string& key) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

void Config::fail(const std::string& key, const std::string& reason) const {
  const Entry* e = find(key);
  throw ArgumentError(name_ + ":" + std::to_string(e ? e->line : 0) + ": key '" + key + "' " +
                      reason);
}

bool Config::has(const std::string& key) const { return find(key) != nullptr; }

double Config::get_double(const std::string& key, double fallback) const {
  const Entry* e = find(key);
  if (!e) return fallback;
  double v = 0.0;
  if (!parse_double(e->value, v)) fail(key, "is not a number: '" + e->value + "'");
  return v;
}

std::uint64_t Config::get_uint64(const std::string& key, std::uint64_t fallback) const {
  const Entry* e = find(key);
  if (!e) return fallback;
  try {
    size_t used = 0;
    const std::uint64_t v = std::stoull(e->value, &used);
    if (used != e->value.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    fail(key, "is not an unsigned integer: '" + e->value + "'");
  }
}

int Config::get_int(const std::string& key, int fallback) const {
  const Entry* e = find(key);
  if (!e) return fallback;
  try {
    size_t used = 0;
    const int v = std::stoi(e->value, &used);
    if (used != e->value.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    fail(key, "is not an integer: '" + e->value + "'");
  }
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  const Entry* e = find(key);
  if (!e) return fallback;
  if (e->value == "true") return true;
  if (e->value == "false") return false;
  fail(key, "is not a boolean ('true' or 'false'): '" + e->value + "'");
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  const Entry* e = find(key);
  return e ? e->value : fallback;
}

std::vector<double> Config::get_list(const std::string& key, std::vector<double> fallback) const {
  const Entry* e = find(key);
  if (!e) return fallback;
  const std::string& v = e->value;
  if (v.size() < 2 || v.front() != '[' || v.back() != ']') {
    fail(key, "is not a list like [1, 2]: '" + v + "'");
  }
  std::vector<double> out;
  std::string inner = v.substr(1, v.size() - 2);
  if (trim(inner).empty()) return out;
  std::istringstream ss(inner);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double d = 0.0;
    if (!parse_double(trim(item), d)) fail(key, "contains a non-numeric entry: '" + item + "'");
    out.push_back(d);
  }
  return out;
}

int Config::line_of(const std::string& key) const {
  const Entry* e = find(key);
  return e ? e->line : 0;
}

std::vector<std::string> Config::keys() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [k, v] : entries_) out.push_back(k);
  return out;
}

const std::vector<std::pair<std::string, std::string>>& config_key_docs() {
  static const std::vector<std::pair<std::string, std::string>> docs = {
      {"run.case", "scenario: 1|case1, 2|case2, 2b|case2bias, 3|case3 (default case1)"},
      {"run.duration", "simulated seconds (default 60)"},
      {"run.dt", "sample interval in seconds (default 0.001)"},
      {"run.seed", "64-bit noise seed (default 42)"},
      {"run.integrator", "lie-splitting (default) or rk4-project"},
      {"trajectory.substeps", "truth-integration substeps per sample (default 10)"},
      {"filter.choice", "h1, h2, h3 or custom (default h2)"},
      {"filter.num", "custom filter numerator, descending powers, e.g. [9.7]"},
      {"filter.den", "custom filter denominator, e.g. [1, 6.2]"},
      {"noise.vector_components", "harmonic signals combined into each landmark noise (default 3)"},
      {"noise.vector_freq_range", "landmark-noise frequency range rad/s (default [8pi, 16pi])"},
      {"noise.vector_amp_range", "landmark-noise amplitude range (default [0.05, 0.4])"},
      {"noise.velocity_alpha_range", "velocity-disturbance sine range (default [0.1, 0.2])"},
      {"noise.velocity_beta_range", "velocity-disturbance cosine range (default [0.1, 0.2])"},
      {"noise.velocity_bias_range", "velocity bias range (default [-0.5, 0.5])"},
      {"disturbance.freqs", "internal-model frequencies rad/s (default [0.2pi])"},
      {"disturbance.bias", "include bias states, true/false (default true)"},
      {"disturbance.rho", "adaptation gain (default 0.5)"},
      {"disturbance.ebar_mode", "adjoint-star (default) or conjugation"},
  };
  return docs;
}

namespace {

void require_range(const Config& cfg, const std::string& key, const std::vector<double>& v) {
  if (v.size() != 2 || v[0] > v[1]) {
    throw ArgumentError(cfg.name() + ":" + std::to_string(cfg.line_of(key)) + ": key '" + key +
                        "' must be a [lo, hi] pair");
  }
}

}  // namespace

ScenarioConfig scenario_from_config(const Config& cfg) {
  for (const auto& key : cfg.keys()) {
    const auto& docs = config_key_docs();
    const bool known = std::any_of(docs.begin(), docs.end(),
                                   [&](const auto& d) { return d.first == key; });
    if (!known) {
      throw ArgumentError(cfg.name() + ":" + std::to_string(cfg.line_of(key)) +
                          ": unknown key '" + key + "'");
    }
  }

  ScenarioConfig sc;

  const std::string case_name = cfg.get_string("run.case", "case1");
  if (case_name == "case1" || case_name == "1") {
    sc.case_id = CaseId::Case1;
  } else if (case_name == "case2" || case_name == "2") {
    sc.case_id = CaseId::Case2;
  } else if (case_name == "case2bias" || case_name == "case2b" || case_name == "2b") {
    sc.case_id = CaseId::Case2Bias;
  } else if (case_name == "case3" || case_name == "3") {
    sc.case_id = CaseId::Case3;
  } else {
    throw ArgumentError(cfg.name() + ":" + std::to_string(cfg.line_of("run.case")) +
                        ": unknown case '" + case_name + "'");
  }

  sc.duration = cfg.get_double("run.duration", sc.duration);
  sc.dt = cfg.get_double("run.dt", sc.dt);
  sc.seed = cfg.get_uint64("run.seed", sc.seed);
  sc.truth_substeps = cfg.get_int("trajectory.substeps", sc.truth_substeps);

  const std::string integ = cfg.get_string("run.integrator", "lie-splitting");
  if (integ == "lie-splitting") {
    sc.integrator = Integrator::LieSplitting;
  } else if (integ == "rk4-project") {
    sc.integrator = Integrator::Rk4Project;
  } else {
    throw ArgumentError(cfg.name() + ":" + std::to_string(cfg.line_of("run.integrator")) +
                        ": unknown integrator '" + integ + "'");
  }

  const std::string filt = cfg.get_string("filter.choice", "h2");
  if (filt == "h1") {
    sc.filter_choice = FilterChoice::H1;
  } else if (filt == "h2") {
    sc.filter_choice = FilterChoice::H2;
  } else if (filt == "h3") {
    sc.filter_choice = FilterChoice::H3;
  } else if (filt == "custom") {
    sc.filter_choice = FilterChoice::Custom;
  } else {
    throw ArgumentError(cfg.name() + ":" + std::to_string(cfg.line_of("filter.choice")) +
                        ": unknown filter '" + filt + "'");
  }
  if (cfg.has("filter.num") || cfg.has("filter.den")) {
    const auto num = cfg.get_list("filter.num", {});
    const auto den = cfg.get_list("filter.den", {});
    if (num.empty() || den.empty()) {
      throw ArgumentError(cfg.name() + ": custom filters need both filter.num and filter.den");
    }
    sc.custom_filter = TransferFunction(
        Eigen::Map<const Eigen::VectorXd>(num.data(), static_cast<Eigen::Index>(num.size())),
        Eigen::Map<const Eigen::VectorXd>(den.data(), static_cast<Eigen::Index>(den.size())));
  }
  if (sc.filter_choice == FilterChoice::Custom && !sc.custom_filter) {
    throw ArgumentError(cfg.name() + ": filter.choice = custom requires filter.num/filter.den");
  }

  sc.noise.vector_components = cfg.get_int("noise.vector_components", sc.noise.vector_components);
  const auto vf = cfg.get_list("noise.vector_freq_range",
                               {sc.noise.vector_freq_lo, sc.noise.vector_freq_hi});
  require_range(cfg, "noise.vector_freq_range", vf);
  sc.noise.vector_freq_lo = vf[0];
  sc.noise.vector_freq_hi = vf[1];
  const auto va = cfg.get_list("noise.vector_amp_range",
                               {sc.noise.vector_amp_lo, sc.noise.vector_amp_hi});
  require_range(cfg, "noise.vector_amp_range", va);
  sc.noise.vector_amp_lo = va[0];
  sc.noise.vector_amp_hi = va[1];
  const auto al = cfg.get_list("noise.velocity_alpha_range",
                               {sc.noise.velocity_alpha_lo, sc.noise.velocity_alpha_hi});
  require_range(cfg, "noise.velocity_alpha_range", al);
  sc.noise.velocity_alpha_lo = al[0];
  sc.noise.velocity_alpha_hi = al[1];
  const auto be = cfg.get_list("noise.velocity_beta_range",
                               {sc.noise.velocity_beta_lo, sc.noise.velocity_beta_hi});
  require_range(cfg, "noise.velocity_beta_range", be);
  sc.noise.velocity_beta_lo = be[0];
  sc.noise.velocity_beta_hi = be[1];
  const auto bi = cfg.get_list("noise.velocity_bias_range",
                               {sc.noise.velocity_bias_lo, sc.noise.velocity_bias_hi});
  require_range(cfg, "noise.velocity_bias_range", bi);
  sc.noise.velocity_bias_lo = bi[0];
  sc.noise.velocity_bias_hi = bi[1];

  sc.disturbance.freqs = cfg.get_list("disturbance.freqs", sc.disturbance.freqs);
  sc.disturbance.bias = cfg.get_bool("disturbance.bias", sc.disturbance.bias);
  sc.disturbance.rho = cfg.get_double("disturbance.rho", sc.disturbance.rho);

  const std::string ebar = cfg.get_string("disturbance.ebar_mode", "adjoint-star");
  if (ebar == "conjugation") {
    sc.ebar_mode = EbarMode::Conjugation;
  } else if (ebar == "adjoint-star") {
    sc.ebar_mode = EbarMode::AdjointStar;
  } else {
    throw ArgumentError(cfg.name() + ":" + std::to_string(cfg.line_of("disturbance.ebar_mode")) +
                        ": unknown ebar mode '" + ebar + "'");
  }

  sc.validate();
  return sc;
}

}  // namespace liecf

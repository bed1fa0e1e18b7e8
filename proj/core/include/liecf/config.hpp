#pragma once

// Flat key-value configuration format: one `section.key = value` pair per
// line, `#` comments, list values in brackets. One file (plus the seed)
// fully determines a run.

#include <map>
#include <string>
#include <vector>

#include "liecf/sim.hpp"

namespace liecf {

class Config {
 public:
  static Config from_file(const std::string& path);
  static Config from_string(const std::string& text, const std::string& name = "<string>");

  bool has(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  std::uint64_t get_uint64(const std::string& key, std::uint64_t fallback) const;
  int get_int(const std::string& key, int fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  std::vector<double> get_list(const std::string& key, std::vector<double> fallback) const;

  /// Line number of a key (for error messages); 0 if absent.
  int line_of(const std::string& key) const;
  std::vector<std::string> keys() const;
  const std::string& name() const { return name_; }

 private:
  struct Entry {
    std::string value;
    int line = 0;
  };
  std::map<std::string, Entry> entries_;
  std::string name_;

  const Entry* find(const std::string& key) const;
  [[noreturn]] void fail(const std::string& key, const std::string& reason) const;
};

/// Documented configuration keys as (key, description) pairs; the CLI help
/// prints this table and unknown keys are rejected against it.
const std::vector<std::pair<std::string, std::string>>& config_key_docs();

/// Translate a parsed file into a scenario, rejecting unknown keys with the
/// offending line in the message.
ScenarioConfig scenario_from_config(const Config& cfg);

}  // namespace liecf

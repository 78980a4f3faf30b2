#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fockbench/yukawa.hpp"

namespace fockbench::config {

// Flat key-value config text, TOML-compatible: `key = value` lines, `#`
// comments, numbers, booleans, quoted strings, [ ... ] arrays (one nesting
// level for point lists).
struct Value {
  enum class Kind { number, boolean, string, array };
  Kind kind = Kind::number;
  double number = 0.0;
  bool boolean = false;
  std::string text;
  std::vector<Value> items;
};

class KeyValueFile {
 public:
  static KeyValueFile parse(const std::string& text);
  static KeyValueFile load(const std::string& path);

  bool has(const std::string& key) const { return values_.count(key) > 0; }
  double number(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;
  std::int64_t integer_or(const std::string& key, std::int64_t fallback) const;
  std::string string_or(const std::string& key,
                        const std::string& fallback) const;
  std::vector<double> number_list(const std::string& key) const;
  std::vector<std::vector<double>> point_list(const std::string& key) const;
  std::vector<std::string> keys() const;

 private:
  std::map<std::string, Value> values_;
};

// Builds a model from a config file. Recognized keys are documented in the
// README; unknown keys are an error so typos cannot silently change a run.
yukawa::YukawaConfig model_from_file(const std::string& path);
yukawa::YukawaConfig model_from_text(const std::string& text);

// Refinement levels: the base model plus cumulative refine_* shells.
std::vector<yukawa::YukawaConfig> refinement_levels_from_file(
    const std::string& path, int levels);
std::vector<yukawa::YukawaConfig> refinement_levels_from_text(
    const std::string& text, int levels);

// sample config text for the built-in desk-scale model
std::string tiny_config_text(double kappa);
std::string hvz_config_text(double kappa);

}  // namespace fockbench::config

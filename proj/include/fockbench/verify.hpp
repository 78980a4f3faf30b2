#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fockbench/yukawa.hpp"

namespace fockbench::verify {

struct CheckResult {
  std::string name;
  double defect = 0.0;  // violation magnitude; 0 when clean
  double tol = 0.0;
  bool pass = false;
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckResult> checks;
  double max_defect = 0.0;
  bool pass = true;

  void add(std::string name, double defect, double tol);
};

struct SuiteOptions {
  int dim_lo = 2;
  int dim_hi = 6;
  int pairs = 50;
  std::uint64_t seed = 42;
  std::optional<yukawa::YukawaConfig> model;  // defaults to the tiny instance
};

// known suites: car, ccr, norms, dgamma-commutators, dirac, fields,
// hi-commutators, bounds, weak-commutator
std::vector<std::string> suite_names();
bool is_suite(const std::string& name);
SuiteResult run_suite(const std::string& name, const SuiteOptions& opts = {});

}  // namespace fockbench::verify

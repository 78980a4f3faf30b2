#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "fockbench/abstract.hpp"
#include "fockbench/boson.hpp"
#include "fockbench/weyl.hpp"
#include "fockbench/yukawa.hpp"

namespace fockbench::reports {

using nlohmann::json;

std::string fmt17(double v);  // 17 significant digits, '.' decimal

// Deterministic run identity: FNV-1a over the command name, normalized
// parameters, and raw config bytes. Outputs embed it; the manifest lists
// the outputs.
struct RunManifest {
  std::string command;
  std::string config_path;
  std::string config_content;
  std::uint64_t seed = 0;
  double tol = 0.0;
  std::string version;
  std::vector<std::string> outputs;
  std::string started_utc;
  std::string finished_utc;

  std::string id() const;
  json to_json() const;  // includes timestamps
};

std::string tool_version();
std::string utc_now();

json to_json(const weyl::ProbeRow& row);
json to_json(const weyl::ProbeReport& report);
json to_json(const weyl::ConvergenceTable& table);
json to_json(const boson::BoundReport& report);
json to_json(const yukawa::DefectReport& report);
json to_json(const yukawa::RelativeBoundReport& report);
json to_json(const yukawa::GapReport& report);
json to_json(const DecayReport& report);

// CSV helpers: header row + data rows, UTF-8, full precision.
std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows);
void write_file(const std::string& path, const std::string& content);

// eigenvalue list in the (level, index, eigenvalue) layout
std::string spectrum_csv(int level, const std::vector<double>& eigenvalues);

}  // namespace fockbench::reports

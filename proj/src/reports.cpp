#include "fockbench/reports.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>

namespace fockbench::reports {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string tool_version() { return "fockbench 0.1.0"; }

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

namespace {

std::uint64_t fnv1a(std::uint64_t h, const std::string& s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

std::string RunManifest::id() const {
  std::uint64_t h = 1469598103934665603ull;
  h = fnv1a(h, command);
  h = fnv1a(h, config_content);
  h = fnv1a(h, std::to_string(seed));
  h = fnv1a(h, fmt17(tol));
  h = fnv1a(h, version);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

json RunManifest::to_json() const {
  json j;
  j["manifest_id"] = id();
  j["command"] = command;
  j["config_path"] = config_path;
  j["seed"] = seed;
  j["tol"] = tol;
  j["tool_version"] = version;
  j["outputs"] = outputs;
  j["started_utc"] = started_utc;
  j["finished_utc"] = finished_utc;
  return j;
}

json to_json(const weyl::ProbeRow& row) {
  json j;
  j["lambda"] = row.lambda;
  j["n"] = row.n;
  j["eps"] = row.eps;
  j["residual"] = row.residual;
  j["term_eps"] = row.term_eps;
  j["term_K"] = row.term_K;
  j["term_B"] = row.term_B;
  j["term_HI"] = row.term_HI;
  j["bound"] = row.bound;
  j["norm_check"] = row.norm_check;
  j["chain_a_lhs"] = row.chain_a_lhs;
  j["chain_a_rhs"] = row.chain_a_rhs;
  j["chain_b_lhs"] = row.chain_b_lhs;
  j["chain_b_rhs"] = row.chain_b_rhs;
  j["chain_c_lhs"] = row.chain_c_lhs;
  j["chain_c_rhs"] = row.chain_c_rhs;
  j["trunc_defect"] = row.trunc_defect;
  j["branch"] = row.branch;
  return j;
}

json to_json(const weyl::ProbeReport& report) {
  json j;
  j["lambda"] = report.lambda;
  j["e0"] = report.e0;
  j["min_residual"] = report.min_residual;
  j["min_slack"] = report.min_slack;
  j["residual_trend_decreasing"] = report.residual_trend_decreasing;
  j["rows"] = json::array();
  for (const auto& row : report.rows) j["rows"].push_back(to_json(row));
  return j;
}

json to_json(const weyl::ConvergenceTable& table) {
  json j;
  j["lambda"] = table.lambda;
  j["rows"] = json::array();
  for (const auto& row : table.rows) {
    json r;
    r["level"] = row.level;
    r["dim"] = row.dim;
    r["e0"] = row.e0;
    r["min_residual"] = row.min_residual;
    r["min_term_B"] = row.min_term_B;
    j["rows"].push_back(r);
  }
  return j;
}

json to_json(const boson::BoundReport& report) {
  json j;
  j["min_margin"] = report.min_margin;
  j["max_violation"] = report.max_violation;
  j["samples"] = report.samples.size();
  return j;
}

json to_json(const yukawa::DefectReport& report) {
  json j;
  j["max_defect"] = report.max_defect;
  j["rows"] = json::array();
  for (const auto& row : report.rows) {
    json r;
    r["name"] = row.name;
    r["defect"] = row.defect;
    j["rows"].push_back(r);
  }
  return j;
}

json to_json(const yukawa::RelativeBoundReport& report) {
  json j;
  j["chi_l1"] = report.chi_l1;
  j["c_psi"] = report.c_psi;
  j["h_norm"] = report.h_norm;
  j["h_over_sqrt_omega"] = report.h_over_sqrt_omega;
  j["min_margin"] = report.min_margin;
  j["rows"] = json::array();
  for (const auto& row : report.rows) {
    json r;
    r["eps"] = row.eps;
    r["a"] = row.a;
    r["b"] = row.b;
    r["min_margin"] = row.min_margin;
    j["rows"].push_back(r);
  }
  return j;
}

json to_json(const yukawa::GapReport& report) {
  json j;
  j["nu"] = report.nu;
  j["kappa"] = report.kappa;
  j["residuals_nonincreasing"] = report.residuals_nonincreasing;
  j["max_residual_increase"] = report.max_residual_increase;
  j["gap_vs_nu_defect"] = report.gap_vs_nu_defect;
  j["min_slack"] = report.min_slack;
  j["lambdas"] = report.lambdas;
  j["levels"] = json::array();
  for (const auto& level : report.levels) {
    json l;
    l["level"] = level.level;
    l["dim"] = level.dim;
    l["e0"] = level.e0;
    l["gap"] = level.gap;
    l["min_residual"] = json::object();
    for (const auto& [lam, r] : level.min_residual)
      l["min_residual"][fmt17(lam)] = r;
    l["branch"] = json::object();
    for (const auto& [lam, b] : level.branch) l["branch"][fmt17(lam)] = b;
    j["levels"].push_back(l);
  }
  return j;
}

json to_json(const DecayReport& report) {
  json j;
  j["nonincreasing"] = report.nonincreasing;
  j["final_r"] = report.final_r;
  j["rows"] = json::array();
  for (const auto& row : report.rows) {
    json r;
    r["n"] = row.n;
    r["r_annihilation"] = row.r_annihilation;
    r["r_creation"] = row.r_creation;
    j["rows"].push_back(r);
  }
  return j;
}

std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += header[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += row[i];
    }
    out += '\n';
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  detail::require(out.good(), "cannot write '" + path + "'");
  out << content;
}

std::string spectrum_csv(int level, const std::vector<double>& eigenvalues) {
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < eigenvalues.size(); ++i)
    rows.push_back({std::to_string(level), std::to_string(i),
                    fmt17(eigenvalues[i])});
  return csv_table({"level", "index", "eigenvalue"}, rows);
}

}  // namespace fockbench::reports

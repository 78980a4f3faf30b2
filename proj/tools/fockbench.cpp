// Command-line front end: verification suites, spectra, Weyl probes, and
// coupling sweeps over configs from flat key-value files.

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "fockbench/config.hpp"
#include "fockbench/reports.hpp"
#include "fockbench/verify.hpp"
#include "fockbench/weyl.hpp"
#include "fockbench/yukawa.hpp"

namespace fs = std::filesystem;
using namespace fockbench;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitSolver = 3;
constexpr int kExitInequality = 4;

struct GlobalArgs {
  std::string config_path;
  std::uint64_t seed = 42;
  double tol = 1e-10;
  int jobs = 1;
  std::string out_dir = ".";
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  detail::require(in.good(), "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

reports::RunManifest make_manifest(const std::string& command,
                                   const GlobalArgs& args) {
  reports::RunManifest manifest;
  manifest.command = command;
  manifest.config_path = args.config_path;
  manifest.config_content =
      args.config_path.empty() ? std::string("<builtin tiny>")
                               : slurp(args.config_path);
  manifest.seed = args.seed;
  manifest.tol = args.tol;
  manifest.version = reports::tool_version();
  manifest.started_utc = reports::utc_now();
  return manifest;
}

void finish_manifest(reports::RunManifest& manifest, const GlobalArgs& args) {
  manifest.finished_utc = reports::utc_now();
  const fs::path path = fs::path(args.out_dir) / "manifest.json";
  reports::write_file(path.string(), manifest.to_json().dump(2) + "\n");
}

yukawa::YukawaConfig load_model(const GlobalArgs& args) {
  if (args.config_path.empty()) return yukawa::tiny_config(0.1);
  return config::model_from_file(args.config_path);
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stod(tok));
  }
  return out;
}

int run_verify(const GlobalArgs& args, const std::vector<std::string>& suites,
               int dim_lo, int dim_hi, int pairs) {
  verify::SuiteOptions opts;
  opts.dim_lo = dim_lo;
  opts.dim_hi = dim_hi;
  opts.pairs = pairs;
  opts.seed = args.seed;
  if (!args.config_path.empty())
    opts.model = config::model_from_file(args.config_path);

  std::vector<std::string> names =
      suites.empty() ? verify::suite_names() : suites;
  for (const auto& name : names) {
    if (!verify::is_suite(name)) {
      std::cerr << "unknown suite '" << name << "'; known suites:";
      for (const auto& s : verify::suite_names()) std::cerr << ' ' << s;
      std::cerr << '\n';
      return kExitUsage;
    }
  }

  reports::RunManifest manifest = make_manifest("verify", args);
  fs::create_directories(args.out_dir);

  bool all_pass = true;
  reports::json out;
  out["manifest_id"] = manifest.id();
  out["suites"] = reports::json::array();

  auto run_one = [&](const std::string& name) {
    return verify::run_suite(name, opts);
  };
  std::vector<verify::SuiteResult> results;
  if (args.jobs > 1) {
    std::vector<std::future<verify::SuiteResult>> futures;
    for (const auto& name : names)
      futures.push_back(std::async(std::launch::async, run_one, name));
    for (auto& f : futures) results.push_back(f.get());
  } else {
    for (const auto& name : names) results.push_back(run_one(name));
  }

  for (const auto& result : results) {
    reports::json suite;
    suite["suite"] = result.suite;
    suite["pass"] = result.pass;
    suite["max_defect"] = result.max_defect;
    suite["checks"] = reports::json::array();
    for (const auto& check : result.checks) {
      reports::json c;
      c["name"] = check.name;
      c["defect"] = check.defect;
      c["tol"] = check.tol;
      c["pass"] = check.pass;
      suite["checks"].push_back(c);
      std::printf("%-4s %-18s %-58s defect %.3e (tol %.1e)\n",
                  check.pass ? "ok" : "FAIL", result.suite.c_str(),
                  check.name.c_str(), check.defect, check.tol);
    }
    all_pass = all_pass && result.pass;
    out["suites"].push_back(suite);
  }

  const fs::path report_path = fs::path(args.out_dir) / "verify.json";
  reports::write_file(report_path.string(), out.dump(2) + "\n");
  manifest.outputs.push_back(report_path.string());
  finish_manifest(manifest, args);
  return all_pass ? kExitOk : kExitCheckFailed;
}

int run_spectrum(const GlobalArgs& args, int k_eigs) {
  const yukawa::YukawaConfig model = load_model(args);
  const yukawa::YukawaSystem sys = yukawa::build_hamiltonian(model);
  reports::RunManifest manifest = make_manifest("spectrum", args);
  fs::create_directories(args.out_dir);

  Spectrum spectrum;
  bool dense_route = sys.system.dim() <= dense_cap();
  if (dense_route) {
    spectrum = eig_dense(sys.system.H);
  } else {
    spectrum = eig_low(sys.system.H,
                       std::min<int>(k_eigs, sys.system.dim() - 1),
                       model.solver_tol);
    if (!spectrum.converged) {
      std::cerr << "eigensolver did not converge; achieved residual "
                << spectrum.residual_tol << '\n';
      return kExitSolver;
    }
  }

  std::vector<double> lowest(
      spectrum.eigenvalues.begin(),
      spectrum.eigenvalues.begin() +
          std::min<std::size_t>(k_eigs, spectrum.eigenvalues.size()));

  const double e0 = spectrum.ground_energy();
  double gap = 0.0;
  bool dense_agrees = true;
  for (double ev : spectrum.eigenvalues)
    if (ev > e0 + 1e-10) {
      gap = ev - e0;
      break;
    }
  if (dense_route && sys.system.dim() <= dense_cap() &&
      static_cast<int>(spectrum.eigenvalues.size()) > 1) {
    // dense/iterative cross check on the low end
    const int kk = std::min<int>(4, sys.system.dim() - 1);
    const Spectrum it = eig_low(sys.system.H, kk, model.solver_tol);
    for (int i = 0; i < kk && it.converged; ++i)
      dense_agrees =
          dense_agrees &&
          std::abs(it.eigenvalues[i] - spectrum.eigenvalues[i]) <=
              10.0 * std::max(model.solver_tol, 1e-12);
  }

  const fs::path csv_path = fs::path(args.out_dir) / "spectrum.csv";
  reports::write_file(csv_path.string(), reports::spectrum_csv(0, lowest));

  reports::json summary;
  summary["manifest_id"] = manifest.id();
  summary["e0"] = e0;
  summary["gap"] = gap;
  summary["nu"] = model.nu();
  summary["gap_over_nu"] = gap / model.nu();
  summary["dim"] = sys.system.dim();
  summary["method"] =
      spectrum.method == SolverMethod::dense ? "dense" : "iterative";
  summary["residual_tol"] = spectrum.residual_tol;
  summary["dense_iterative_agree"] = dense_agrees;
  const fs::path json_path = fs::path(args.out_dir) / "summary.json";
  reports::write_file(json_path.string(), summary.dump(2) + "\n");

  manifest.outputs.push_back(csv_path.string());
  manifest.outputs.push_back(json_path.string());
  finish_manifest(manifest, args);
  std::printf("E0 = %.12g  gap = %.12g  nu = %.12g  dim = %lld (%s)\n", e0,
              gap, model.nu(), static_cast<long long>(sys.system.dim()),
              summary["method"].get<std::string>().c_str());
  return kExitOk;
}

int run_probe(const GlobalArgs& args, std::string lambdas_text,
              std::string eps_text, int levels, int family) {
  std::vector<yukawa::YukawaConfig> configs;
  if (args.config_path.empty()) {
    configs = yukawa::hvz_configs(0.1);
    if (levels < static_cast<int>(configs.size()))
      configs.resize(std::max(levels, 1));
  } else {
    configs = config::refinement_levels_from_file(args.config_path, levels);
  }

  std::vector<double> lambdas = parse_number_list(lambdas_text);
  if (lambdas.empty())
    lambdas = {configs.front().boson_mass, configs.front().fermion_mass};
  std::vector<double> eps_list = parse_number_list(eps_text);
  if (eps_list.empty()) eps_list = {0.05, 0.1, 0.2};

  yukawa::HvzOptions opts;
  opts.eps_list = eps_list;
  opts.family_size = family;
  opts.solver_tol = configs.front().solver_tol;

  reports::RunManifest manifest = make_manifest("probe", args);
  fs::create_directories(args.out_dir);

  yukawa::GapReport report;
  if (configs.size() >= 2) {
    report = yukawa::hvz_gap_probe(configs, lambdas, opts);
  } else {
    // single level: plain probes, no refinement claims
    const yukawa::YukawaSystem sys = yukawa::build_hamiltonian(configs[0]);
    const Spectrum spectrum = weyl::window_spectrum(
        sys.system.H,
        *std::max_element(eps_list.begin(), eps_list.end()),
        opts.solver_tol);
    report.nu = configs[0].nu();
    report.kappa = configs[0].kappa;
    report.lambdas = lambdas;
    yukawa::GapLevel level;
    level.level = 0;
    level.dim = sys.system.dim();
    level.e0 = spectrum.ground_energy();
    for (double ev : spectrum.eigenvalues)
      if (ev > level.e0 + 1e-10) {
        level.gap = ev - level.e0;
        break;
      }
    report.min_slack = std::numeric_limits<double>::infinity();
    for (double lam : lambdas) {
      weyl::ProbeOptions popts;
      popts.spectrum = &spectrum;
      const auto probe = weyl::probe_lambda(
          sys.system, lam, yukawa::fermion_packet_family(sys, lam, family),
          eps_list, popts);
      level.min_residual[lam] = probe.min_residual;
      level.branch[lam] = "fermion";
      report.min_slack = std::min(report.min_slack, probe.min_slack);
      report.reports.push_back(probe);
    }
    report.levels.push_back(level);
    report.gap_vs_nu_defect = std::abs(report.levels[0].gap - report.nu);
  }

  // probe rows with their refinement level, plus plot data
  std::vector<std::vector<std::string>> rows;
  std::vector<std::vector<std::string>> plot_rows;
  const std::size_t per_level = report.lambdas.size();
  for (std::size_t idx = 0; idx < report.reports.size(); ++idx) {
    const int level = static_cast<int>(idx / per_level);
    const auto& probe = report.reports[idx];
    for (const auto& row : probe.rows) {
      rows.push_back({std::to_string(level), row.branch,
                      reports::fmt17(row.lambda), std::to_string(row.n),
                      reports::fmt17(row.eps), reports::fmt17(row.residual),
                      reports::fmt17(row.term_eps), reports::fmt17(row.term_K),
                      reports::fmt17(row.term_B), reports::fmt17(row.term_HI),
                      reports::fmt17(row.bound),
                      reports::fmt17(row.norm_check),
                      reports::fmt17(row.trunc_defect)});
      plot_rows.push_back({std::to_string(level), reports::fmt17(row.lambda),
                           std::to_string(row.n), reports::fmt17(row.eps),
                           reports::fmt17(row.residual)});
    }
  }
  const fs::path probe_csv = fs::path(args.out_dir) / "probe.csv";
  reports::write_file(
      probe_csv.string(),
      reports::csv_table({"level", "branch", "lambda", "n", "eps", "residual",
                          "term_eps", "term_K", "term_B", "term_HI", "bound",
                          "norm_check", "trunc_defect"},
                         rows));
  const fs::path plot_csv = fs::path(args.out_dir) / "plotdata.csv";
  reports::write_file(
      plot_csv.string(),
      reports::csv_table({"level", "lambda", "n", "eps", "residual"},
                         plot_rows));

  reports::json summary = reports::to_json(report);
  summary["manifest_id"] = manifest.id();
  const fs::path json_path = fs::path(args.out_dir) / "probe.json";
  reports::write_file(json_path.string(), summary.dump(2) + "\n");

  manifest.outputs.push_back(probe_csv.string());
  manifest.outputs.push_back(plot_csv.string());
  manifest.outputs.push_back(json_path.string());
  finish_manifest(manifest, args);

  for (const auto& level : report.levels) {
    std::printf("level %d  dim %-8lld E0 % .9f  gap %.9f", level.level,
                static_cast<long long>(level.dim), level.e0, level.gap);
    for (const auto& [lam, r] : level.min_residual)
      std::printf("  min_res(λ=%g) %.3e", lam, r);
    std::printf("\n");
  }

  if (report.min_slack < -1e-9) {
    std::cerr << "rowwise residual bound violated (min slack "
              << report.min_slack << "); this is a bug\n";
    return kExitInequality;
  }
  return kExitOk;
}

int run_sweep(const GlobalArgs& args, const std::string& kappas_text,
              int k_eigs) {
  std::vector<double> kappas = parse_number_list(kappas_text);
  if (kappas.empty()) kappas = {0.0, 0.05, 0.1, 0.2};
  yukawa::YukawaConfig base = load_model(args);
  reports::RunManifest manifest = make_manifest("sweep", args);
  fs::create_directories(args.out_dir);

  auto solve_one = [&](double kappa) {
    yukawa::YukawaConfig cfg = base;
    cfg.kappa = kappa;
    const yukawa::YukawaSystem sys = yukawa::build_hamiltonian(cfg);
    Spectrum spectrum;
    if (sys.system.dim() <= dense_cap())
      spectrum = eig_dense(sys.system.H);
    else
      spectrum = eig_low(sys.system.H,
                         std::min<int>(k_eigs, sys.system.dim() - 1),
                         cfg.solver_tol);
    double gap = 0.0;
    for (double ev : spectrum.eigenvalues)
      if (ev > spectrum.ground_energy() + 1e-10) {
        gap = ev - spectrum.ground_energy();
        break;
      }
    return std::pair<double, double>(spectrum.ground_energy(), gap);
  };

  std::vector<std::pair<double, double>> results(kappas.size());
  if (args.jobs > 1) {
    std::vector<std::future<std::pair<double, double>>> futures;
    for (double kappa : kappas)
      futures.push_back(std::async(std::launch::async, solve_one, kappa));
    for (std::size_t i = 0; i < futures.size(); ++i)
      results[i] = futures[i].get();
  } else {
    for (std::size_t i = 0; i < kappas.size(); ++i)
      results[i] = solve_one(kappas[i]);
  }

  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < kappas.size(); ++i)
    rows.push_back({reports::fmt17(kappas[i]), reports::fmt17(results[i].first),
                    reports::fmt17(results[i].second)});
  const fs::path csv_path = fs::path(args.out_dir) / "sweep.csv";
  reports::write_file(csv_path.string(),
                      reports::csv_table({"kappa", "e0", "gap"}, rows));

  reports::json summary;
  summary["manifest_id"] = manifest.id();
  summary["kappas"] = kappas;
  summary["nu"] = base.nu();
  const fs::path json_path = fs::path(args.out_dir) / "sweep.json";
  reports::write_file(json_path.string(), summary.dump(2) + "\n");

  manifest.outputs.push_back(csv_path.string());
  manifest.outputs.push_back(json_path.string());
  finish_manifest(manifest, args);
  for (std::size_t i = 0; i < kappas.size(); ++i)
    std::printf("kappa %-8g E0 % .12g  gap %.12g\n", kappas[i],
                results[i].first, results[i].second);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fockbench — truncated Fock spaces, operator identities, and "
               "essential-spectrum probes"};
  app.require_subcommand(1);

  GlobalArgs args;
  app.add_option("--config", args.config_path, "model config file");
  app.add_option("--seed", args.seed, "random seed");
  app.add_option("--tol", args.tol, "report tolerance");
  app.add_option("--jobs", args.jobs, "worker count for sweeps/suites");
  app.add_option("--out", args.out_dir, "output directory");

  auto* verify_cmd = app.add_subcommand("verify", "run verification suites");
  std::vector<std::string> suites;
  std::string dims = "2..6";
  int pairs = 50;
  verify_cmd->add_option("--suite", suites,
                         "suite names (default: all)")
      ->delimiter(',');
  verify_cmd->add_option("--dims", dims, "fermion mode range lo..hi");
  verify_cmd->add_option("--pairs", pairs, "random pairs per relation");

  auto* spectrum_cmd = app.add_subcommand("spectrum", "lowest eigenvalues");
  int k_eigs = 6;
  spectrum_cmd->add_option("--k", k_eigs, "eigenvalue count");

  auto* probe_cmd = app.add_subcommand("probe", "Weyl residual probe");
  std::string lambdas_text, eps_text;
  int levels = 3, family = 5;
  probe_cmd->add_option("--lambdas", lambdas_text, "comma-separated λ list");
  probe_cmd->add_option("--eps", eps_text, "comma-separated ε list");
  probe_cmd->add_option("--levels", levels, "refinement levels");
  probe_cmd->add_option("--family", family, "trial vectors per level");

  auto* sweep_cmd = app.add_subcommand("sweep", "coupling sweep");
  std::string kappas_text;
  sweep_cmd->add_option("--kappas", kappas_text, "comma-separated κ list");
  sweep_cmd->add_option("--k", k_eigs, "eigenvalue count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (verify_cmd->parsed()) {
      int dim_lo = 2, dim_hi = 6;
      const auto sep = dims.find("..");
      if (sep != std::string::npos) {
        dim_lo = std::stoi(dims.substr(0, sep));
        dim_hi = std::stoi(dims.substr(sep + 2));
      } else {
        dim_lo = dim_hi = std::stoi(dims);
      }
      return run_verify(args, suites, dim_lo, dim_hi, pairs);
    }
    if (spectrum_cmd->parsed()) return run_spectrum(args, k_eigs);
    if (probe_cmd->parsed())
      return run_probe(args, lambdas_text, eps_text, levels, family);
    if (sweep_cmd->parsed()) return run_sweep(args, kappas_text, k_eigs);
  } catch (const ConvergenceError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

// hetcache: cache-vs-buffer placement experiments for two-tier HetNets.
// Subcommands: coeffs | solve | sweep | validate. Exit codes: 0 ok,
// 2 input error, 3 numeric failure, 4 validation failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "hetcache/baselines.hpp"
#include "hetcache/coefficients.hpp"
#include "hetcache/delay.hpp"
#include "hetcache/report.hpp"
#include "hetcache/scenario_io.hpp"
#include "hetcache/validation.hpp"

namespace {

using hetcache::BandwidthAllocation;
using hetcache::CachePlacement;
using hetcache::DelayCoefficients;
using hetcache::NetworkScenario;
using hetcache::SolveReport;
using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitValidation = 4;

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw hetcache::InputError("cannot write to " + path);
  out << content;
}

void emit(const std::optional<std::string>& path, const std::string& content) {
  if (path)
    write_file(*path, content);
  else
    std::cout << content;
}

NetworkScenario load_and_validate(const std::string& path, bool quiet = false) {
  hetcache::LoadedScenario loaded = hetcache::load_scenario_json(path);
  for (const std::string& warning : loaded.warnings)
    if (!quiet) std::cerr << "warning: " << warning << "\n";
  hetcache::ValidationReport report = hetcache::validate_scenario(loaded.scenario);
  if (!report.empty()) {
    std::ostringstream os;
    os << "scenario " << path << " is invalid:";
    for (const auto& issue : report) os << "\n  [" << issue.code << "] " << issue.detail;
    throw hetcache::ConstraintError(os.str());
  }
  return loaded.scenario;
}

std::string derive_trace_path(const std::string& out_path) {
  size_t dot = out_path.rfind('.');
  std::string stem = dot == std::string::npos ? out_path : out_path.substr(0, dot);
  return stem + ".trace.csv";
}

struct CoeffsArgs {
  std::string scenario_path;
  std::optional<std::string> out_path;
  long long samples = 1000000;
  uint64_t seed = 1;
  double quad_rtol = 1e-4;
  double max_gap = 0.02;  // access bound is max(max_gap, 3 sigma); fronthaul is max_gap/2
};

int run_coeffs(const CoeffsArgs& args) {
  NetworkScenario scn = load_and_validate(args.scenario_path);
  hetcache::QuadSpec spec;
  spec.spatial_rtol = args.quad_rtol;
  DelayCoefficients coeffs = hetcache::compute_coefficients(scn, spec);

  json j;
  j["access"] = coeffs.access;
  j["fronthaul"] = coeffs.fronthaul;
  json mc_access = json::array();
  bool pass = true;
  for (int bs = 0; bs <= scn.picos(); ++bs) {
    hetcache::McEstimate mc = hetcache::mc_access_coefficient(scn, bs, args.samples, args.seed);
    double gap = std::fabs(coeffs.a(bs) - mc.value);
    double bound = std::max(args.max_gap * mc.value, 3.0 * mc.std_error);
    pass = pass && gap <= bound;
    mc_access.push_back({{"bs", bs},
                         {"estimate", mc.value},
                         {"std_error", mc.std_error},
                         {"samples", mc.samples},
                         {"gap", gap},
                         {"bound", bound},
                         {"pass", gap <= bound}});
  }
  j["mc_access"] = mc_access;
  json mc_fronthaul = json::array();
  for (int bs = 1; bs <= scn.picos(); ++bs) {
    double x = scn.noise_power_w /
               (scn.tx_power_w[0] *
                std::pow(scn.fronthaul_distance_m(bs), -scn.pathloss_exponent));
    hetcache::McEstimate rate = hetcache::mc_fronthaul_rate(x, args.samples, args.seed + bs);
    double mc_b = 1.0 / rate.value;
    double gap = std::fabs(coeffs.b(bs) - mc_b) / mc_b;
    double bound = args.max_gap / 2.0;
    pass = pass && gap <= bound;
    mc_fronthaul.push_back({{"bs", bs},
                            {"estimate", mc_b},
                            {"relative_gap", gap},
                            {"bound", bound},
                            {"pass", gap <= bound}});
  }
  j["mc_fronthaul"] = mc_fronthaul;
  j["seed"] = args.seed;
  j["pass"] = pass;
  emit(args.out_path, j.dump(2) + "\n");
  return pass ? kExitOk : kExitValidation;
}

struct SolveArgs {
  std::string scenario_path;
  std::string algo = "icp";
  std::optional<std::string> coeffs_path;
  std::optional<std::string> out_path;
  int kmax = 50;
  double tol = 1e-9;
  bool full_range = false;
  std::string sweep_order = "asc";
  double quad_rtol = 1e-4;
};

SolveReport dispatch_solve(const NetworkScenario& scn, const DelayCoefficients& coeffs,
                           const SolveArgs& args) {
  if (args.algo == "oceb") return hetcache::solve_oceb(scn, coeffs);
  if (args.algo == "ocfbob") return hetcache::solve_ocfbob(scn, coeffs);
  if (args.algo == "icp") {
    hetcache::IcpOptions opts;
    opts.max_sweeps = args.kmax;
    opts.tol = args.tol;
    opts.restrict_to_range = !args.full_range;
    if (args.sweep_order != "asc" && args.sweep_order != "desc")
      throw hetcache::InputError("--sweep-order must be asc or desc");
    opts.descending_order = args.sweep_order == "desc";
    return hetcache::solve_icp_report(scn, coeffs, opts);
  }
  throw hetcache::InputError("unknown algorithm '" + args.algo + "' (icp|oceb|ocfbob)");
}

int run_solve(const SolveArgs& args) {
  NetworkScenario scn = load_and_validate(args.scenario_path);
  hetcache::QuadSpec spec;
  spec.spatial_rtol = args.quad_rtol;
  DelayCoefficients coeffs = args.coeffs_path
                                 ? hetcache::load_coefficients_json(*args.coeffs_path)
                                 : hetcache::compute_coefficients(scn, spec);
  if (coeffs.access.size() != static_cast<size_t>(scn.picos()) + 1)
    throw hetcache::InputError("coefficients file does not match the scenario's BS count");

  SolveReport report = dispatch_solve(scn, coeffs, args);
  for (const hetcache::RowStructure& row : report.structure)
    if (!row.ok())
      throw hetcache::NumericError("solver emitted a row without the prefix structure", 0.0);

  emit(args.out_path, hetcache::solve_report_to_json(report));
  if (args.algo == "icp" && args.out_path)
    write_file(derive_trace_path(*args.out_path), hetcache::icp_trace_to_csv(report.trace));
  return kExitOk;
}

struct SweepArgs {
  std::string scenario_path;
  std::string sweep_spec;  // param=v1,v2,...
  std::string algos = "icp,oceb,ocfbob";
  std::optional<std::string> out_path;
  int kmax = 50;
  double tol = 1e-9;
  double quad_rtol = 1e-4;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, sep))
    if (!item.empty()) parts.push_back(item);
  return parts;
}

NetworkScenario apply_sweep_value(NetworkScenario scn, const std::string& param, double value) {
  if (param == "nu") {
    scn.catalog.popularity = hetcache::zipf_popularity(scn.catalog.files(), value);
  } else if (param == "W") {
    scn.total_bandwidth_hz = value;
  } else if (param == "D") {
    scn.buffer_delay_s = value;
  } else if (param == "C") {
    for (double& c : scn.storage_bits) c = value;
  } else {
    throw hetcache::InputError("unknown sweep parameter '" + param + "' (nu|W|D|C)");
  }
  return scn;
}

int run_sweep(const SweepArgs& args) {
  NetworkScenario base = load_and_validate(args.scenario_path);
  size_t eq = args.sweep_spec.find('=');
  if (eq == std::string::npos)
    throw hetcache::InputError("--sweep expects param=v1,v2,... (param in nu|W|D|C)");
  std::string param = args.sweep_spec.substr(0, eq);
  std::vector<double> values;
  for (const std::string& v : split(args.sweep_spec.substr(eq + 1), ',')) values.push_back(std::stod(v));
  if (values.empty()) throw hetcache::InputError("--sweep needs at least one value");
  std::vector<std::string> algos = split(args.algos, ',');
  if (algos.empty()) throw hetcache::InputError("--algos needs at least one algorithm");

  // Coefficients depend only on geometry/radio, never on nu/W/D/C: compute once.
  hetcache::QuadSpec spec;
  spec.spatial_rtol = args.quad_rtol;
  DelayCoefficients coeffs = hetcache::compute_coefficients(base, spec);

  struct Row {
    double value;
    std::string algo;
    double delay;
    double hit;
  };
  std::vector<std::future<std::vector<Row>>> futures;
  for (double value : values) {
    futures.push_back(std::async(std::launch::async, [&, value]() {
      NetworkScenario scn = apply_sweep_value(base, param, value);
      std::vector<Row> rows;
      for (const std::string& algo : algos) {
        SolveArgs sub;
        sub.algo = algo;
        sub.kmax = args.kmax;
        sub.tol = args.tol;
        SolveReport report = dispatch_solve(scn, coeffs, sub);
        for (const hetcache::RowStructure& row : report.structure)
          if (!row.ok())
            throw hetcache::NumericError("sweep point emitted an unstructured placement", 0.0);
        rows.push_back({value, algo, report.objective_s, report.hit_ratio});
      }
      return rows;
    }));
  }

  std::ostringstream csv;
  csv << "# hetcache-sweep-v1 param=" << param << "\n";
  csv << "param,value,algorithm,delay_s,hit_ratio\n";
  for (auto& future : futures) {
    for (const Row& row : future.get()) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "%s,%.17g,%s,%.17g,%.17g\n", param.c_str(), row.value,
                    row.algo.c_str(), row.delay, row.hit);
      csv << buf;
    }
  }
  emit(args.out_path, csv.str());
  return kExitOk;
}

struct ValidateArgs {
  std::string suite = "all";
  std::optional<std::string> scenario_path;
  std::optional<std::string> out_path;
  uint64_t seed = 1;
  long long samples = 1000000;
};

int run_validate(const ValidateArgs& args) {
  NetworkScenario scn = args.scenario_path ? load_and_validate(*args.scenario_path)
                                           : hetcache::make_default_scenario(true);
  std::vector<hetcache::CheckResult> results =
      hetcache::run_validation_suite(args.suite, scn, args.seed, args.samples);
  bool all_pass = true;
  json checks = json::array();
  for (const hetcache::CheckResult& r : results) {
    all_pass = all_pass && r.pass;
    std::printf("[%s] %-46s value=%.3e bound=%.3e%s%s\n", r.pass ? "PASS" : "FAIL",
                r.name.c_str(), r.value, r.bound, r.detail.empty() ? "" : "  ",
                r.detail.c_str());
    checks.push_back({{"name", r.name},
                      {"pass", r.pass},
                      {"value", r.value},
                      {"bound", r.bound},
                      {"detail", r.detail}});
  }
  if (args.out_path) {
    json j;
    j["suite"] = args.suite;
    j["pass"] = all_pass;
    j["checks"] = checks;
    write_file(*args.out_path, j.dump(2) + "\n");
  }
  std::printf("%s: %zu checks, %s\n", args.suite.c_str(), results.size(),
              all_pass ? "all passed" : "FAILURES present");
  return all_pass ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cache-vs-buffer placement pipeline for two-tier HetNets"};
  app.require_subcommand(1);

  CoeffsArgs coeffs_args;
  CLI::App* coeffs = app.add_subcommand("coeffs", "Compute delay coefficients + MC cross-check");
  coeffs->add_option("--scenario", coeffs_args.scenario_path, "Scenario JSON")->required();
  coeffs->add_option("--out", coeffs_args.out_path, "Output JSON path (default stdout)");
  coeffs->add_option("--samples", coeffs_args.samples, "MC samples per BS");
  coeffs->add_option("--seed", coeffs_args.seed, "RNG seed");
  coeffs->add_option("--quad-rtol", coeffs_args.quad_rtol, "Spatial quadrature tolerance");
  coeffs->add_option("--max-gap", coeffs_args.max_gap, "Relative MC gap bound");

  SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand("solve", "Run one algorithm on a scenario");
  solve->add_option("--scenario", solve_args.scenario_path, "Scenario JSON")->required();
  solve->add_option("--algo", solve_args.algo, "icp|oceb|ocfbob");
  solve->add_option("--coeffs", solve_args.coeffs_path, "Coefficients JSON (skip quadrature)");
  solve->add_option("--out", solve_args.out_path, "Report JSON path (default stdout)");
  solve->add_option("--kmax", solve_args.kmax, "Max ICP sweeps");
  solve->add_option("--tol", solve_args.tol, "ICP relative convergence tolerance");
  solve->add_flag("--full-range", solve_args.full_range,
                  "Evaluate all leading indices 1..F_m1 (drop the lower-bound restriction)");
  solve->add_option("--sweep-order", solve_args.sweep_order, "ICP pico sweep order: asc|desc");
  solve->add_option("--quad-rtol", solve_args.quad_rtol, "Spatial quadrature tolerance");

  SweepArgs sweep_args;
  CLI::App* sweep = app.add_subcommand("sweep", "Parameter sweep to CSV");
  sweep->add_option("--scenario", sweep_args.scenario_path, "Scenario JSON")->required();
  sweep->add_option("--sweep", sweep_args.sweep_spec, "param=v1,v2,... (nu|W|D|C)")->required();
  sweep->add_option("--algos", sweep_args.algos, "Comma list of icp,oceb,ocfbob");
  sweep->add_option("--out", sweep_args.out_path, "CSV path (default stdout)");
  sweep->add_option("--kmax", sweep_args.kmax, "Max ICP sweeps");
  sweep->add_option("--tol", sweep_args.tol, "ICP relative convergence tolerance");
  sweep->add_option("--quad-rtol", sweep_args.quad_rtol, "Spatial quadrature tolerance");

  ValidateArgs validate_args;
  CLI::App* validate = app.add_subcommand("validate", "Run oracle suites");
  validate->add_option("suite", validate_args.suite,
                       "special-fn|coefficients|fixed-bw|bandwidth|icp|all");
  validate->add_option("--scenario", validate_args.scenario_path,
                       "Scenario JSON (default: built-in scaled scenario)");
  validate->add_option("--out", validate_args.out_path, "Machine-readable JSON result path");
  validate->add_option("--seed", validate_args.seed, "RNG seed");
  validate->add_option("--samples", validate_args.samples, "MC samples for coefficient checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (coeffs->parsed()) return run_coeffs(coeffs_args);
    if (solve->parsed()) return run_solve(solve_args);
    if (sweep->parsed()) return run_sweep(sweep_args);
    if (validate->parsed()) return run_validate(validate_args);
  } catch (const hetcache::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const hetcache::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const hetcache::ConstraintError& e) {
    std::cerr << "validation failure: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::domain_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitInput;
}

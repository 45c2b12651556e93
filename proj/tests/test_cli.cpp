#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

const std::string kCli = HETCACHE_CLI_PATH;
const std::string kScenarioDir = HETCACHE_SCENARIO_DIR;

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run(const std::string& args) {
  std::string path = std::string("/tmp/hetcache_cli_out_") + std::to_string(rand()) + ".txt";
  std::string cmd = kCli + " " + args + " >" + path + " 2>&1";
  int status = std::system(cmd.c_str());
  std::ifstream in(path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  std::remove(path.c_str());
  return {WEXITSTATUS(status), buffer.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

// Single-pico mini scenario: cheap quadrature, fast solves.
const char* kMiniScenario = R"({
  "macro_radius_m": 600.0,
  "pico_radii_m": [100.0],
  "pico_positions_m": [[250.0, 0.0]],
  "tx_powers_w": [10.0, 1.0],
  "noise_power_w": 1e-13,
  "pathloss_exponent": 3.5,
  "user_density_per_m2": 2e-4,
  "total_bandwidth_hz": 5e6,
  "buffer_delay_s": 0.05,
  "storage_bits": [2e6],
  "catalog": {
    "length_bits": [1e6, 1e6, 1e6, 1e6],
    "popularities": [0.4, 0.3, 0.2, 0.1]
  }
})";

const char* kMiniCoeffs = R"({
  "access": [500.0, 20.0],
  "fronthaul": [0.08]
})";

std::string mini_scenario_path() {
  static std::string path = [] {
    std::string p = "/tmp/hetcache_mini_scenario.json";
    write_file(p, kMiniScenario);
    return p;
  }();
  return path;
}

std::string mini_coeffs_path() {
  static std::string path = [] {
    std::string p = "/tmp/hetcache_mini_coeffs.json";
    write_file(p, kMiniCoeffs);
    return p;
  }();
  return path;
}

}  // namespace

TEST_CASE("solve oceb produces a valid report") {
  std::string out = "/tmp/hetcache_test_oceb.json";
  RunResult r = run("solve --scenario " + mini_scenario_path() + " --algo oceb --coeffs " +
                    mini_coeffs_path() + " --out " + out);
  INFO(r.output);
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(slurp(out));
  CHECK(j["algorithm"] == "oceb");
  CHECK(j["hit_ratio"].get<double>() > 0.0);
  CHECK(j["hit_ratio"].get<double>() <= 1.0);
  CHECK(j["allocation_hz"].size() == 2);
  std::remove(out.c_str());
}

TEST_CASE("solve icp writes a monotone trace csv") {
  std::string out = "/tmp/hetcache_test_icp.json";
  RunResult r = run("solve --scenario " + mini_scenario_path() + " --algo icp --coeffs " +
                    mini_coeffs_path() + " --out " + out);
  INFO(r.output);
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(slurp(out));
  CHECK(j["trace"]["status"] == "converged");

  std::string trace = slurp("/tmp/hetcache_test_icp.trace.csv");
  CHECK(trace.find("hetcache-trace-v1") != std::string::npos);
  // Objective column is nonincreasing.
  std::istringstream lines(trace);
  std::string line;
  double prev = 1e300;
  bool first = true;
  while (std::getline(lines, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 's') continue;
    size_t c1 = line.find(',');
    double obj = std::stod(line.substr(c1 + 1));
    if (!first) CHECK(obj <= prev * (1.0 + 1e-12));
    prev = obj;
    first = false;
  }
  std::remove(out.c_str());
  std::remove("/tmp/hetcache_test_icp.trace.csv");
}

TEST_CASE("malformed scenario json exits 2") {
  write_file("/tmp/hetcache_bad.json", "{ this is not json");
  RunResult r = run("solve --scenario /tmp/hetcache_bad.json --algo oceb");
  CHECK(r.exit_code == 2);
  std::remove("/tmp/hetcache_bad.json");
}

TEST_CASE("invalid scenario exits 4") {
  // Two picos stacked at the same spot.
  std::string text = R"({
    "macro_radius_m": 600.0,
    "pico_radii_m": [100.0, 100.0],
    "pico_positions_m": [[250.0, 0.0], [250.0, 0.0]],
    "tx_powers_w": [10.0, 1.0, 1.0],
    "noise_power_w": 1e-13,
    "pathloss_exponent": 3.5,
    "user_density_per_m2": 2e-4,
    "total_bandwidth_hz": 5e6,
    "buffer_delay_s": 2.0,
    "storage_bits": [2e6, 2e6],
    "catalog": {"length_bits": [1e6, 1e6, 1e6, 1e6],
                "popularities": [0.4, 0.3, 0.2, 0.1]}
  })";
  write_file("/tmp/hetcache_overlap.json", text);
  RunResult r = run("solve --scenario /tmp/hetcache_overlap.json --algo oceb --coeffs " +
                    mini_coeffs_path());
  CHECK(r.exit_code == 4);
  std::remove("/tmp/hetcache_overlap.json");
}

TEST_CASE("unknown algorithm exits 2") {
  RunResult r = run("solve --scenario " + mini_scenario_path() + " --algo magic --coeffs " +
                    mini_coeffs_path());
  CHECK(r.exit_code == 2);
}

TEST_CASE("coeffs output is byte-identical for a fixed seed") {
  std::string out1 = "/tmp/hetcache_coeffs_1.json";
  std::string out2 = "/tmp/hetcache_coeffs_2.json";
  std::string flags = " --samples 20000 --seed 7 --quad-rtol 1e-3 ";
  RunResult r1 = run("coeffs --scenario " + mini_scenario_path() + flags + "--out " + out1);
  INFO(r1.output);
  CHECK(r1.exit_code == 0);
  RunResult r2 = run("coeffs --scenario " + mini_scenario_path() + flags + "--out " + out2);
  CHECK(r2.exit_code == 0);
  std::string a = slurp(out1), b = slurp(out2);
  CHECK(!a.empty());
  CHECK(a == b);
  auto j = nlohmann::json::parse(a);
  CHECK(j["pass"].get<bool>());
  std::remove(out1.c_str());
  std::remove(out2.c_str());
}

TEST_CASE("sweep emits deterministic csv with the documented trends") {
  std::string out = "/tmp/hetcache_sweep_D.csv";
  RunResult r = run("sweep --scenario " + mini_scenario_path() +
                    " --sweep D=0.5,1,2,4 --algos oceb,ocfbob --quad-rtol 1e-3 --out " + out);
  INFO(r.output);
  CHECK(r.exit_code == 0);
  std::string csv1 = slurp(out);
  CHECK(csv1.find("param,value,algorithm,delay_s,hit_ratio") != std::string::npos);

  // Delay is nondecreasing in D for each algorithm.
  std::istringstream lines(csv1);
  std::string line;
  double prev_oceb = 0.0, prev_ocfbob = 0.0;
  while (std::getline(lines, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("param", 0) == 0) continue;
    std::istringstream fields(line);
    std::string param, value, algo, delay;
    std::getline(fields, param, ',');
    std::getline(fields, value, ',');
    std::getline(fields, algo, ',');
    std::getline(fields, delay, ',');
    double d = std::stod(delay);
    if (algo == "oceb") {
      CHECK(d >= prev_oceb);
      prev_oceb = d;
    } else {
      CHECK(d >= prev_ocfbob);
      prev_ocfbob = d;
    }
  }

  RunResult r2 = run("sweep --scenario " + mini_scenario_path() +
                     " --sweep D=0.5,1,2,4 --algos oceb,ocfbob --quad-rtol 1e-3 --out " + out);
  CHECK(r2.exit_code == 0);
  CHECK(slurp(out) == csv1);
  std::remove(out.c_str());
}

TEST_CASE("sweep rejects unknown parameters") {
  RunResult r = run("sweep --scenario " + mini_scenario_path() + " --sweep Q=1,2");
  CHECK(r.exit_code == 2);
}

TEST_CASE("validate special-fn passes") {
  RunResult r = run("validate special-fn");
  INFO(r.output);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("PASS") != std::string::npos);
  CHECK(r.output.find("FAIL") == std::string::npos);
}

TEST_CASE("shipped scenario files load") {
  // Supply a shape-matching coefficients file so the run skips quadrature.
  std::string coeffs = R"({
    "access": [700.0, 25.0, 22.0, 24.0],
    "fronthaul": [0.10, 0.06, 0.09]
  })";
  write_file("/tmp/hetcache_scaled_coeffs.json", coeffs);
  for (const char* name : {"default_scaled.json", "default_full.json"}) {
    RunResult r = run("solve --scenario " + kScenarioDir + "/" + name + " --algo ocfbob" +
                      " --coeffs /tmp/hetcache_scaled_coeffs.json");
    INFO(name, ": ", r.output);
    CHECK(r.exit_code == 0);
  }
  std::remove("/tmp/hetcache_scaled_coeffs.json");
}

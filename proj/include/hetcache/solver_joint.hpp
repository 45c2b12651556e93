#pragma once

#include <array>
#include <string>
#include <vector>

#include "hetcache/model.hpp"

namespace hetcache {

// Closed-form optimal split of W between the shared access band and the
// fronthaul bands: w_m proportional to sqrt(sum_f b_m q_f L_f (1-s_mf)),
// w_0 proportional to sqrt(sum_f q_f L_f sum_m a_m). Sums to W exactly
// (w_0 is assigned the subtraction remainder).
BandwidthAllocation optimal_bandwidth(const DelayCoefficients& coeffs,
                                      const FileCatalog& catalog,
                                      const CachePlacement& placement, double total_bandwidth_hz);

// Quintic in x = sqrt(b_m w_f - b_m q_f L_f s) whose roots are the interior
// stationary points of the per-file reduced objective.
struct QuinticCoefficients {
  std::array<double, 6> z{};  // z[k] multiplies x^k
};

QuinticCoefficients quintic_coefficients(const FileCatalog& catalog, double capacity_bits,
                                         double b, double buffer_delay_s,
                                         double total_bandwidth_hz, double u, int file_index);

// All real roots of the quintic strictly inside (lo, hi): companion-matrix
// eigenvalues, Newton-polished, residual-checked, deduplicated.
std::vector<double> real_roots_in_interval(const QuinticCoefficients& q, double lo, double hi);

struct BestResponse {
  std::vector<double> row;
  double objective = 0.0;  // reduced objective of the whole placement
  int leading_index = 0;
  long long root_solves = 0;
  long long candidate_evals = 0;
};

// Optimal prefix row for pico bs (1-based) holding every other row fixed,
// minimizing the reduced objective over {0, s_max, quintic roots} per
// candidate leading index.
BestResponse best_response(const NetworkScenario& scn, const DelayCoefficients& coeffs,
                           const CachePlacement& placement, int bs,
                           bool restrict_to_range = true);

struct IcpIteration {
  int sweep = 0;
  double objective = 0.0;
  std::vector<bool> row_changed;
  long long root_solves = 0;
  long long candidate_evals = 0;
};

struct IcpTrace {
  double initial_objective = 0.0;
  std::vector<IcpIteration> iterations;
  std::string status;  // "converged" | "max-iterations"
};

struct IcpOptions {
  int max_sweeps = 50;
  double tol = 1e-9;               // relative improvement per full sweep
  bool restrict_to_range = true;   // reuse the bounded candidate range
  bool descending_order = false;   // sweep picos M..1 instead of 1..M
};

struct IcpResult {
  CachePlacement placement;
  BandwidthAllocation allocation;
  double objective = 0.0;  // reduced objective == average delay at allocation
  IcpTrace trace;
};

// Gauss-Seidel sweeps of best responses, ascending pico order, starting from
// `init` (all-zeros by default). The objective trace is checked nonincreasing;
// a rise beyond 1e-12 relative raises NumericError.
IcpResult icp(const NetworkScenario& scn, const DelayCoefficients& coeffs,
              const CachePlacement& init, const IcpOptions& opts = {});
IcpResult icp(const NetworkScenario& scn, const DelayCoefficients& coeffs,
              const IcpOptions& opts = {});

}  // namespace hetcache

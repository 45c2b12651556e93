#pragma once

#include <string>

#include "hetcache/model.hpp"

namespace hetcache {

// Result of pitting a solver against the exhaustive grid scan.
// relative_gap = (oracle - solver) / |solver|; a strongly negative gap means
// the grid found something better than the solver, which for the exact
// fixed-bandwidth solver must never exceed fp noise.
struct OracleReport {
  std::string instance;
  double solver_objective = 0.0;
  double oracle_objective = 0.0;
  double relative_gap = 0.0;
  bool structure_ok = false;
  long long points_scanned = 0;
};

struct GridBudget {
  int max_picos = 2;
  int max_files = 4;
  double max_step = 1e-2;          // steps must be at least this fine
  double max_points = 4.0e9;       // refuse larger scans with a size report
};

// Exhaustive scan of the raw grid {0, step, ..., 1}^(M x F), feasibility
// filtered, minimizing the fixed-bandwidth objective under `alloc`; compares
// against solve_all_fixed_bw on the same instance.
OracleReport grid_search_oracle_fixed(const NetworkScenario& scn, const DelayCoefficients& coeffs,
                                      const BandwidthAllocation& alloc, double step,
                                      const GridBudget& budget = {});

// Same raw grid, joint mode: bandwidth eliminated by the closed form, points
// scored by the reduced objective; compares against ICP.
OracleReport grid_search_oracle_joint(const NetworkScenario& scn, const DelayCoefficients& coeffs,
                                      double step, const GridBudget& budget = {});

// Max over picos of |B_m / w_m^2 - chi| / chi with chi read off the w_0
// stationarity equation. Picos with no uncached bits are skipped; a zero
// denominator reports +inf.
double kkt_residual_bandwidth(const DelayCoefficients& coeffs, const FileCatalog& catalog,
                              const CachePlacement& placement, const BandwidthAllocation& alloc);

struct RowStructure {
  bool nonincreasing = false;
  bool at_most_one_fractional = false;
  bool ok() const { return nonincreasing && at_most_one_fractional; }
};

// Checks each row for the provable optimal-placement shape: entries
// nonincreasing with at most one strictly inside (0,1), 1e-9 tolerance on
// {0,1} membership.
std::vector<RowStructure> structure_check(const CachePlacement& placement);
bool structure_ok(const CachePlacement& placement);

}  // namespace hetcache

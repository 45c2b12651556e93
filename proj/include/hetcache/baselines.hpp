#pragma once

#include <string>

#include "hetcache/delay.hpp"
#include "hetcache/model.hpp"
#include "hetcache/oracle.hpp"
#include "hetcache/solver_joint.hpp"

namespace hetcache {

struct SolveReport {
  std::string algorithm;  // "icp" | "oceb" | "ocfbob"
  CachePlacement placement;
  BandwidthAllocation allocation;
  double objective_s = 0.0;  // average delay, seconds
  double hit_ratio = 0.0;
  double bandwidth_kkt_residual = 0.0;
  std::vector<RowStructure> structure;
  std::vector<DelayBreakdown> decomposition;  // per BS, macro first
  IcpTrace trace;                             // empty for the baselines
};

// Optimal cache placement under the equal bandwidth split w_m = W/(M+1).
SolveReport solve_oceb(const NetworkScenario& scn, const DelayCoefficients& coeffs);

// Half the storage pinned as buffer, cache budget C_m/2 filled greedily in
// popularity order (fractional last file), bandwidth then optimized by the
// closed form. The greedy fill is bandwidth-independent, so the alternation
// converges after one pass; it is still iterated until the objective settles.
SolveReport solve_ocfbob(const NetworkScenario& scn, const DelayCoefficients& coeffs);

// ICP wrapped into the same report shape.
SolveReport solve_icp_report(const NetworkScenario& scn, const DelayCoefficients& coeffs,
                             const IcpOptions& opts = {});

}  // namespace hetcache

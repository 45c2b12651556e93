#include "hetcache/baselines.hpp"

#include <cmath>

#include "hetcache/delay.hpp"
#include "hetcache/solver_fixed_bw.hpp"

namespace hetcache {

namespace {

SolveReport finalize_report(const NetworkScenario& scn, const DelayCoefficients& coeffs,
                            std::string algorithm, CachePlacement placement,
                            BandwidthAllocation alloc) {
  SolveReport report;
  report.algorithm = std::move(algorithm);
  report.decomposition = delay_decomposition(scn, coeffs, placement, alloc);
  report.objective_s = 0.0;
  for (const DelayBreakdown& part : report.decomposition) report.objective_s += part.total();
  report.hit_ratio = hit_ratio(scn.catalog, placement);
  report.bandwidth_kkt_residual = kkt_residual_bandwidth(coeffs, scn.catalog, placement, alloc);
  report.structure = structure_check(placement);
  report.placement = std::move(placement);
  report.allocation = std::move(alloc);
  return report;
}

}  // namespace

SolveReport solve_oceb(const NetworkScenario& scn, const DelayCoefficients& coeffs) {
  const int M = scn.picos();
  BandwidthAllocation alloc;
  alloc.w.assign(M + 1, scn.total_bandwidth_hz / (M + 1));
  CachePlacement placement = solve_all_fixed_bw(scn, coeffs, alloc);
  return finalize_report(scn, coeffs, "oceb", std::move(placement), std::move(alloc));
}

SolveReport solve_ocfbob(const NetworkScenario& scn, const DelayCoefficients& coeffs) {
  const int M = scn.picos();
  const int F = scn.catalog.files();
  CachePlacement placement = CachePlacement::zeros(M, F);
  for (int m = 0; m < M; ++m) {
    // Half the storage stays buffer; fill the cache half in popularity order,
    // fractional last file.
    double budget = scn.storage_bits[m] / 2.0;
    for (int f = 0; f < F && budget > 0.0; ++f) {
      double L = scn.catalog.length_bits[f];
      double take = std::min(budget, L);
      placement.at(m, f) = take / L;
      budget -= take;
    }
  }
  // The fill does not depend on bandwidth, so this settles after one pass;
  // iterated anyway in case the objective is still moving.
  BandwidthAllocation alloc =
      optimal_bandwidth(coeffs, scn.catalog, placement, scn.total_bandwidth_hz);
  double objective = average_delay(scn, coeffs, placement, alloc);
  for (int pass = 0; pass < 10; ++pass) {
    BandwidthAllocation next =
        optimal_bandwidth(coeffs, scn.catalog, placement, scn.total_bandwidth_hz);
    double next_objective = average_delay(scn, coeffs, placement, next);
    bool settled = std::fabs(next_objective - objective) <= 1e-9 * std::max(1.0, objective);
    alloc = std::move(next);
    objective = next_objective;
    if (settled) break;
  }
  return finalize_report(scn, coeffs, "ocfbob", std::move(placement), std::move(alloc));
}

SolveReport solve_icp_report(const NetworkScenario& scn, const DelayCoefficients& coeffs,
                             const IcpOptions& opts) {
  IcpResult result = icp(scn, coeffs, opts);
  SolveReport report = finalize_report(scn, coeffs, "icp", std::move(result.placement),
                                       std::move(result.allocation));
  report.trace = std::move(result.trace);
  return report;
}

}  // namespace hetcache

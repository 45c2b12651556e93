#pragma once

#include "hetcache/model.hpp"

namespace hetcache {

// Per-file delay at one pico: access + fronthaul + buffer term.
// Convention: a term with zero numerator is 0 even when its denominator is 0
// (a fully cached file needs neither fronthaul nor buffer); a positive
// numerator over a zero denominator is +inf and propagates.
double file_delay(double length_bits, double cached_frac, double a, double b, double w0,
                  double wm, double capacity_bits, double cached_total_bits,
                  double buffer_delay_s);

// Network-wide average delay: sum over picos and files of q_f d_mf plus the
// macro access term. +inf propagates. Throws ConstraintError on infeasible
// placement/allocation, naming the violated constraint.
double average_delay(const NetworkScenario& scn, const DelayCoefficients& coeffs,
                     const CachePlacement& placement, const BandwidthAllocation& alloc);

// Per-BS decomposition of average_delay (same feasibility checks).
struct DelayBreakdown {
  double access = 0.0;
  double fronthaul = 0.0;
  double buffer = 0.0;
  double total() const { return access + fronthaul + buffer; }
};
std::vector<DelayBreakdown> delay_decomposition(const NetworkScenario& scn,
                                                const DelayCoefficients& coeffs,
                                                const CachePlacement& placement,
                                                const BandwidthAllocation& alloc);

// Fronthaul + buffer part of the objective under a fixed allocation, i.e. the
// part the fixed-bandwidth cache solver actually minimizes (the access term
// does not depend on the placement).
double fixed_bw_objective(const NetworkScenario& scn, const DelayCoefficients& coeffs,
                          const CachePlacement& placement, const BandwidthAllocation& alloc);

// Delay after substituting the closed-form optimal bandwidth:
// (a + sum_m v_m)^2 / W + buffer terms, with v_m = sqrt(sum_f b_m q_f L_f (1-s_mf))
// and a = sqrt(sum_f q_f L_f sum_m a_m).
double reduced_objective(const NetworkScenario& scn, const DelayCoefficients& coeffs,
                         const CachePlacement& placement);

// rho = (1/M) sum_m sum_f q_f s_mf.
double hit_ratio(const FileCatalog& catalog, const CachePlacement& placement);

}  // namespace hetcache

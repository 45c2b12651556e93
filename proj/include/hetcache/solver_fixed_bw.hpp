#pragma once

#include "hetcache/model.hpp"

namespace hetcache {

// 0-based inclusive range of leading file indices whose prefix rows can be
// optimal: hi from the capacity overflow point, lo from the z(f) bound that
// forces s_max = 1 below it.
struct CandidateRange {
  int lo = 0;
  int hi = 0;
};

CandidateRange candidate_range(const FileCatalog& catalog, double capacity_bits);

// Fronthaul + buffer objective of a prefix row (1,..,1, s, 0,..): files
// before file_index fully cached, s of file_index cached, rest uncached.
double prefix_row_objective(const FileCatalog& catalog, double capacity_bits, double b, double w,
                            double buffer_delay_s, int file_index, double s);

// Optimal fractional entry for a fixed leading index: either s_max or the
// closed-form stationary point, chosen by the four-way case split on the
// z(f) bound and the stationary point's position.
double optimal_fraction(const FileCatalog& catalog, double capacity_bits, double b, double w,
                        double buffer_delay_s, int file_index);

struct PicoSolution {
  std::vector<double> row;
  double objective = 0.0;  // fronthaul + buffer part for this pico
  int leading_index = 0;   // 0-based f of the (possibly) fractional entry
};

// Optimal single-pico placement under fixed bandwidth: enumerates the prefix
// candidates (restricted to the candidate range unless told otherwise) and
// keeps the best objective. Ties prefer more cached bits, then the smaller
// leading index.
PicoSolution solve_pico_fixed_bw(const FileCatalog& catalog, double capacity_bits, double b,
                                 double w, double buffer_delay_s,
                                 bool restrict_to_range = true);

// All picos independently under the given allocation.
CachePlacement solve_all_fixed_bw(const NetworkScenario& scn, const DelayCoefficients& coeffs,
                                  const BandwidthAllocation& alloc);

}  // namespace hetcache

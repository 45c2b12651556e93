#include "hetcache/solver_fixed_bw.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace hetcache {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEqTol = 1e-9;  // relative tolerance of the exact-equality branches

double prefix_bits(const FileCatalog& catalog, int file_index) {
  double sum = 0.0;
  for (int l = 0; l < file_index; ++l) sum += catalog.length_bits[l];
  return sum;
}

// z(f) = sum_{l<=f} L_l + sum_{l>f} q_l L_l / q_f (0-based f). Strictly
// increasing in f, so "capacity >= z(f)" pins the lower candidate index.
double z_bound(const FileCatalog& catalog, int f) {
  return prefix_bits(catalog, f + 1) + catalog.tail_weighted_bits(f + 1) / catalog.popularity[f];
}

}  // namespace

CandidateRange candidate_range(const FileCatalog& catalog, double capacity_bits) {
  const int F = catalog.files();
  if (!(capacity_bits > 0.0) || capacity_bits >= catalog.total_bits() * (1.0 - 1e-12))
    throw ConstraintError("candidate_range: capacity must be in (0, total catalog bits)");

  int hi = F - 1;
  double prefix = 0.0;
  for (int f = 0; f < F; ++f) {
    prefix += catalog.length_bits[f];
    if (std::fabs(prefix - capacity_bits) <= kEqTol * capacity_bits || prefix > capacity_bits) {
      hi = f;
      break;
    }
  }

  int lo = 0;
  for (int f = 0; f < F; ++f) {
    if (z_bound(catalog, f) <= capacity_bits * (1.0 + kEqTol))
      lo = f;
    else
      break;
  }
  if (lo > hi) lo = hi;
  return {lo, hi};
}

double prefix_row_objective(const FileCatalog& catalog, double capacity_bits, double b, double w,
                            double buffer_delay_s, int file_index, double s) {
  double prefix = prefix_bits(catalog, file_index);
  double L = catalog.length_bits[file_index];
  double uncached_ql = catalog.popularity[file_index] * L * (1.0 - s) +
                       catalog.tail_weighted_bits(file_index + 1);
  double buffer_bits = capacity_bits - prefix - s * L;
  if (buffer_bits < 0.0) buffer_bits = 0.0;

  double fronthaul = 0.0;
  if (b * uncached_ql > 0.0) fronthaul = w > 0.0 ? b * uncached_ql / w : kInf;
  double buffer = 0.0;
  if (buffer_delay_s * uncached_ql > 0.0)
    buffer = buffer_bits > 0.0 ? buffer_delay_s * uncached_ql / buffer_bits : kInf;
  return fronthaul + buffer;
}

double optimal_fraction(const FileCatalog& catalog, double capacity_bits, double b, double w,
                        double buffer_delay_s, int file_index) {
  const double prefix = prefix_bits(catalog, file_index);
  if (prefix > capacity_bits * (1.0 + kEqTol))
    throw ConstraintError("optimal_fraction: prefix already exceeds capacity");
  const double L = catalog.length_bits[file_index];
  const double q = catalog.popularity[file_index];
  const double s_max = std::max(0.0, std::min(1.0, (capacity_bits - prefix) / L));

  // Everything through f plus the q-weighted tail fits: fill to the cap.
  const double z = z_bound(catalog, file_index);
  if (capacity_bits >= z * (1.0 - kEqTol)) return s_max;

  if (!(w > 0.0))
    throw ConstraintError("optimal_fraction: degenerate-bandwidth (w = 0 with uncachable tail)");

  // Interior stationary point of the fronthaul+buffer tradeoff; the radicand
  // is positive exactly because capacity < z(f).
  const double radicand = w * buffer_delay_s * q * (z - capacity_bits);
  const double sqrt_bq = std::sqrt(b * q);
  const double s1 = sqrt_bq > 0.0
                        ? ((capacity_bits - prefix) * sqrt_bq - std::sqrt(radicand)) / (L * sqrt_bq)
                        : -kInf;

  auto g = [&](double s) {
    return prefix_row_objective(catalog, capacity_bits, b, w, buffer_delay_s, file_index, s);
  };
  // Case split in the order written: interior root vs cap, 0 vs cap, cap.
  // Objective ties go to the larger (more cached) fraction.
  if (s1 > 0.0 && s1 < 1.0) return g(s1) < g(s_max) ? s1 : s_max;
  if (s1 <= 0.0) return g(0.0) < g(s_max) ? 0.0 : s_max;
  return s_max;
}

PicoSolution solve_pico_fixed_bw(const FileCatalog& catalog, double capacity_bits, double b,
                                 double w, double buffer_delay_s, bool restrict_to_range) {
  CandidateRange range = candidate_range(catalog, capacity_bits);
  const int first = restrict_to_range ? range.lo : 0;

  PicoSolution best;
  best.objective = kInf;
  double best_cached = -1.0;
  bool found = false;
  for (int f = first; f <= range.hi; ++f) {
    double s = optimal_fraction(catalog, capacity_bits, b, w, buffer_delay_s, f);
    double obj = prefix_row_objective(catalog, capacity_bits, b, w, buffer_delay_s, f, s);
    double cached = prefix_bits(catalog, f) + s * catalog.length_bits[f];
    bool better = !found || obj < best.objective ||
                  (obj == best.objective &&
                   (cached > best_cached || (cached == best_cached && f < best.leading_index)));
    if (better) {
      best.objective = obj;
      best.leading_index = f;
      best_cached = cached;
      found = true;
      best.row = prefix_placement(catalog, capacity_bits, f, s);
    }
  }
  if (!found || std::isinf(best.objective))
    throw NumericError("solve_pico_fixed_bw: every candidate has infinite objective", kInf);
  return best;
}

CachePlacement solve_all_fixed_bw(const NetworkScenario& scn, const DelayCoefficients& coeffs,
                                  const BandwidthAllocation& alloc) {
  const int M = scn.picos();
  CachePlacement placement = CachePlacement::zeros(M, scn.catalog.files());
  for (int m = 0; m < M; ++m) {
    try {
      PicoSolution sol = solve_pico_fixed_bw(scn.catalog, scn.storage_bits[m], coeffs.b(m + 1),
                                             alloc.w[m + 1], scn.buffer_delay_s);
      placement.set_row(m, sol.row);
    } catch (const NumericError& e) {
      std::ostringstream os;
      os << "pico " << m << ": " << e.what();
      throw NumericError(os.str(), e.achieved_tolerance);
    } catch (const ConstraintError& e) {
      std::ostringstream os;
      os << "pico " << m << ": " << e.what();
      throw ConstraintError(os.str());
    }
  }
  return placement;
}

}  // namespace hetcache

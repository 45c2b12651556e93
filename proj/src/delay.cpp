#include "hetcache/delay.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace hetcache {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// num/den with the fully-cached convention: zero numerator wins over a zero
// denominator, a positive numerator over zero is +inf.
double ratio_term(double num, double den) {
  if (num == 0.0) return 0.0;
  if (den <= 0.0) return kInf;
  return num / den;
}

void check_feasible(const NetworkScenario& scn, const CachePlacement& placement,
                    const BandwidthAllocation& alloc) {
  const int M = scn.picos();
  const int F = scn.catalog.files();
  auto fail = [](const std::string& what) { throw ConstraintError(what); };
  if (placement.picos != M || placement.files != F) fail("placement shape mismatch");
  if (alloc.w.size() != static_cast<size_t>(M) + 1) fail("allocation size mismatch");
  for (int m = 0; m < M; ++m) {
    for (int f = 0; f < F; ++f) {
      double v = placement.at(m, f);
      if (!(v >= -1e-12 && v <= 1.0 + 1e-12)) {
        std::ostringstream os;
        os << "cache fraction outside [0,1] at pico " << m << " file " << f;
        fail(os.str());
      }
    }
    double cached = placement.cached_bits(scn.catalog, m);
    if (cached > scn.storage_bits[m] * (1.0 + 1e-9)) {
      std::ostringstream os;
      os << "storage capacity exceeded at pico " << m;
      fail(os.str());
    }
  }
  double total = 0.0;
  for (double v : alloc.w) {
    if (!(v >= -1e-12)) fail("negative bandwidth entry");
    total += v;
  }
  if (total > scn.total_bandwidth_hz * (1.0 + 1e-9)) fail("bandwidth budget exceeded");
}

}  // namespace

double file_delay(double length_bits, double cached_frac, double a, double b, double w0,
                  double wm, double capacity_bits, double cached_total_bits,
                  double buffer_delay_s) {
  if (cached_total_bits > capacity_bits * (1.0 + 1e-9))
    throw ConstraintError("file_delay: cached bits exceed storage capacity");
  double uncached = (1.0 - cached_frac) * length_bits;
  double access = ratio_term(a * length_bits, w0);
  double fronthaul = ratio_term(b * uncached, wm);
  double buffer =
      ratio_term(uncached * buffer_delay_s, std::max(capacity_bits - cached_total_bits, 0.0));
  return access + fronthaul + buffer;
}

std::vector<DelayBreakdown> delay_decomposition(const NetworkScenario& scn,
                                                const DelayCoefficients& coeffs,
                                                const CachePlacement& placement,
                                                const BandwidthAllocation& alloc) {
  check_feasible(scn, placement, alloc);
  const int M = scn.picos();
  const int F = scn.catalog.files();
  const double w0 = alloc.w[0];
  std::vector<DelayBreakdown> out(M + 1);
  for (int f = 0; f < F; ++f)
    out[0].access +=
        scn.catalog.popularity[f] * ratio_term(coeffs.a(0) * scn.catalog.length_bits[f], w0);
  for (int m = 1; m <= M; ++m) {
    double cached = placement.cached_bits(scn.catalog, m - 1);
    double buffer_bits = std::max(scn.storage_bits[m - 1] - cached, 0.0);
    for (int f = 0; f < F; ++f) {
      double q = scn.catalog.popularity[f];
      double L = scn.catalog.length_bits[f];
      double uncached = (1.0 - placement.at(m - 1, f)) * L;
      out[m].access += q * ratio_term(coeffs.a(m) * L, w0);
      out[m].fronthaul += q * ratio_term(coeffs.b(m) * uncached, alloc.w[m]);
      out[m].buffer += q * ratio_term(uncached * scn.buffer_delay_s, buffer_bits);
    }
  }
  return out;
}

double average_delay(const NetworkScenario& scn, const DelayCoefficients& coeffs,
                     const CachePlacement& placement, const BandwidthAllocation& alloc) {
  double total = 0.0;
  for (const DelayBreakdown& part : delay_decomposition(scn, coeffs, placement, alloc))
    total += part.total();
  return total;
}

double fixed_bw_objective(const NetworkScenario& scn, const DelayCoefficients& coeffs,
                          const CachePlacement& placement, const BandwidthAllocation& alloc) {
  double total = 0.0;
  for (const DelayBreakdown& part : delay_decomposition(scn, coeffs, placement, alloc))
    total += part.fronthaul + part.buffer;
  return total;
}

double reduced_objective(const NetworkScenario& scn, const DelayCoefficients& coeffs,
                         const CachePlacement& placement) {
  const int M = scn.picos();
  const int F = scn.catalog.files();
  double access_sum = 0.0;  // sum_f q_f L_f * sum_m a_m
  double ql_total = 0.0;
  for (int f = 0; f < F; ++f) ql_total += scn.catalog.popularity[f] * scn.catalog.length_bits[f];
  double a_sum = 0.0;
  for (int m = 0; m <= M; ++m) a_sum += coeffs.a(m);
  access_sum = ql_total * a_sum;

  double a = std::sqrt(access_sum);
  double sqrt_sum = a;
  double buffer_total = 0.0;
  for (int m = 0; m < M; ++m) {
    double uncached_ql = 0.0;
    double cached = 0.0;
    for (int f = 0; f < F; ++f) {
      double L = scn.catalog.length_bits[f];
      uncached_ql += scn.catalog.popularity[f] * L * (1.0 - placement.at(m, f));
      cached += placement.at(m, f) * L;
    }
    sqrt_sum += std::sqrt(std::max(coeffs.b(m + 1) * uncached_ql, 0.0));
    buffer_total += ratio_term(uncached_ql * scn.buffer_delay_s,
                               std::max(scn.storage_bits[m] - cached, 0.0));
  }
  return sqrt_sum * sqrt_sum / scn.total_bandwidth_hz + buffer_total;
}

double hit_ratio(const FileCatalog& catalog, const CachePlacement& placement) {
  if (placement.picos == 0) throw std::domain_error("hit_ratio: undefined without picos");
  double sum = 0.0;
  for (int m = 0; m < placement.picos; ++m)
    for (int f = 0; f < placement.files; ++f) sum += catalog.popularity[f] * placement.at(m, f);
  return sum / placement.picos;
}

}  // namespace hetcache

#include "hetcache/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace hetcache {

namespace {

constexpr double kPopularitySumTol = 1e-9;
constexpr double kStrictOrderTol = 1e-12;
constexpr double kCapacityTol = 1e-9;

std::string fmt(const char* what, int idx) {
  std::ostringstream os;
  os << what << " (index " << idx << ")";
  return os.str();
}

}  // namespace

double FileCatalog::total_bits() const {
  double sum = 0.0;
  for (double L : length_bits) sum += L;
  return sum;
}

double FileCatalog::tail_weighted_bits(int f) const {
  double sum = 0.0;
  for (int l = f; l < files(); ++l) sum += popularity[l] * length_bits[l];
  return sum;
}

std::vector<std::string> FileCatalog::check() const {
  std::vector<std::string> issues;
  if (length_bits.empty()) issues.push_back("catalog is empty");
  if (length_bits.size() != popularity.size())
    issues.push_back("length/popularity size mismatch");
  for (int f = 0; f < files(); ++f) {
    if (!(length_bits[f] > 0.0)) issues.push_back(fmt("nonpositive file length", f));
  }
  double sum = 0.0;
  for (size_t f = 0; f < popularity.size(); ++f) {
    double q = popularity[f];
    if (!(q > 0.0)) issues.push_back(fmt("nonpositive popularity", static_cast<int>(f)));
    sum += q;
    if (f > 0 && !(popularity[f - 1] - q > kStrictOrderTol * popularity[f - 1]))
      issues.push_back(fmt("popularity not strictly decreasing at", static_cast<int>(f)));
  }
  if (!popularity.empty() && std::fabs(sum - 1.0) > kPopularitySumTol)
    issues.push_back("popularities do not sum to 1");
  return issues;
}

std::vector<double> zipf_popularity(int file_count, double skewness) {
  if (file_count < 1) throw std::invalid_argument("zipf_popularity: file_count must be >= 1");
  if (!(skewness >= 0.0) || !std::isfinite(skewness))
    throw std::invalid_argument("zipf_popularity: skewness must be finite and >= 0");
  std::vector<double> q(file_count);
  // Kahan sum: plain accumulation drifts past 1e-12 around a million files.
  double norm = 0.0, comp = 0.0;
  for (int f = 0; f < file_count; ++f) {
    q[f] = std::pow(static_cast<double>(f + 1), -skewness);
    double y = q[f] - comp;
    double t = norm + y;
    comp = (t - norm) - y;
    norm = t;
  }
  for (double& v : q) v /= norm;
  return q;
}

double distance(const Vec2& a, const Vec2& b) { return std::hypot(a.x - b.x, a.y - b.y); }

double NetworkScenario::fronthaul_distance_m(int bs) const {
  return distance({0.0, 0.0}, pico_position_m[bs - 1]);
}

double NetworkScenario::region_area_m2(int bs) const {
  if (bs >= 1) {
    double r = pico_radius_m[bs - 1];
    return std::numbers::pi * r * r;
  }
  double sum_r2 = 0.0;
  for (double r : pico_radius_m) sum_r2 += r * r;
  return std::numbers::pi * (macro_radius_m * macro_radius_m - sum_r2);
}

ValidationReport validate_scenario(const NetworkScenario& scn) {
  ValidationReport report;
  auto add = [&report](const std::string& code, const std::string& detail) {
    report.push_back({code, detail});
  };

  const int M = scn.picos();
  if (scn.pico_position_m.size() != static_cast<size_t>(M))
    add("shape", "pico position/radius count mismatch");
  if (scn.storage_bits.size() != static_cast<size_t>(M))
    add("shape", "storage entry count != pico count");
  if (scn.tx_power_w.size() != static_cast<size_t>(M) + 1)
    add("shape", "tx power count != picos + 1");
  if (!report.empty()) return report;  // geometry checks need matching shapes

  if (!(scn.macro_radius_m > 0.0)) add("positivity", "macro radius must be > 0");
  for (int m = 0; m < M; ++m)
    if (!(scn.pico_radius_m[m] > 0.0)) add("positivity", fmt("pico radius must be > 0", m));
  for (size_t m = 0; m < scn.tx_power_w.size(); ++m)
    if (!(scn.tx_power_w[m] > 0.0))
      add("positivity", fmt("tx power must be > 0", static_cast<int>(m)));
  if (!(scn.noise_power_w > 0.0)) add("positivity", "noise power must be > 0");
  if (!(scn.user_density_per_m2 > 0.0)) add("positivity", "user density must be > 0");
  if (!(scn.total_bandwidth_hz > 0.0)) add("positivity", "total bandwidth must be > 0");
  if (!(scn.buffer_delay_s > 0.0)) add("positivity", "buffer delay must be > 0");
  if (!(scn.pathloss_exponent > 2.0)) add("pathloss", "pathloss exponent must be > 2");

  for (int m = 0; m < M; ++m) {
    double reach = distance({0.0, 0.0}, scn.pico_position_m[m]) + scn.pico_radius_m[m];
    if (reach > scn.macro_radius_m * (1.0 + 1e-12))
      add("pico-containment", fmt("pico disk extends beyond the macro disk", m));
    for (int n = m + 1; n < M; ++n) {
      double d = distance(scn.pico_position_m[m], scn.pico_position_m[n]);
      double need = scn.pico_radius_m[m] + scn.pico_radius_m[n];
      if (d < need * (1.0 - 1e-12)) {
        std::ostringstream os;
        os << "pico disks " << m << " and " << n << " overlap";
        add("pico-overlap", os.str());
      }
    }
  }

  for (const std::string& issue : scn.catalog.check()) add("catalog", issue);

  if (!scn.catalog.length_bits.empty()) {
    double total = scn.catalog.total_bits();
    for (int m = 0; m < M; ++m) {
      if (!(scn.storage_bits[m] > 0.0)) {
        add("positivity", fmt("storage must be > 0", m));
      } else if (scn.storage_bits[m] >= total * (1.0 - 1e-12)) {
        add("storage-capacity", fmt("storage can hold the whole catalog at pico", m));
      }
    }
  }
  return report;
}

CachePlacement CachePlacement::zeros(int picos, int files) {
  CachePlacement p;
  p.picos = picos;
  p.files = files;
  p.s.assign(static_cast<size_t>(picos) * files, 0.0);
  return p;
}

void CachePlacement::set_row(int m, std::span<const double> values) {
  std::copy(values.begin(), values.end(), s.begin() + static_cast<size_t>(m) * files);
}

double CachePlacement::cached_bits(const FileCatalog& catalog, int m) const {
  double sum = 0.0;
  for (int f = 0; f < files; ++f) sum += at(m, f) * catalog.length_bits[f];
  return sum;
}

double BandwidthAllocation::total() const {
  // Fronthaul entries first, shared band last: the optimal allocator builds
  // w_0 as the budget minus this exact partial sum, which makes the total
  // land on the budget bit-exactly.
  double sum = 0.0;
  for (size_t m = 1; m < w.size(); ++m) sum += w[m];
  return w.empty() ? 0.0 : sum + w[0];
}

std::vector<double> prefix_placement(const FileCatalog& catalog, double capacity_bits,
                                     int file_index, double frac) {
  const int F = catalog.files();
  if (file_index < 0 || file_index >= F)
    throw std::invalid_argument("prefix_placement: file index out of range");
  if (!(frac >= 0.0 && frac <= 1.0))
    throw std::invalid_argument("prefix_placement: fraction outside [0,1]");
  std::vector<double> row(F, 0.0);
  double cached = frac * catalog.length_bits[file_index];
  for (int l = 0; l < file_index; ++l) {
    row[l] = 1.0;
    cached += catalog.length_bits[l];
  }
  row[file_index] = frac;
  if (cached > capacity_bits * (1.0 + kCapacityTol)) {
    std::ostringstream os;
    os << "infeasible-prefix: " << cached << " bits exceed capacity " << capacity_bits;
    throw ConstraintError(os.str());
  }
  return row;
}

}  // namespace hetcache

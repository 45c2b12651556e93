#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hetcache/errors.hpp"

namespace hetcache {

// File library: sizes in bits and strictly decreasing popularities.
struct FileCatalog {
  std::vector<double> length_bits;   // L_f > 0
  std::vector<double> popularity;    // q_f, q_1 > q_2 > ... > q_F > 0, sums to 1

  int files() const { return static_cast<int>(length_bits.size()); }
  double total_bits() const;
  // Sum of q_l * L_l over l >= f (0-based). Used all over the solvers.
  double tail_weighted_bits(int f) const;

  // Empty if the catalog satisfies all invariants, else a list of messages.
  std::vector<std::string> check() const;
};

// q_f = f^-nu / sum_l l^-nu. nu = 0 gives the uniform vector, which is valid
// for this function but not for a FileCatalog (ties break the strict order).
std::vector<double> zipf_popularity(int file_count, double skewness);

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

double distance(const Vec2& a, const Vec2& b);

// Two-tier network: one macro BS at the origin plus M disjoint pico disks
// inside the macro disk. Canonical units throughout: meters, watts, Hz,
// seconds, bits.
struct NetworkScenario {
  double macro_radius_m = 0.0;           // r_0
  std::vector<double> pico_radius_m;     // r_m, one per pico
  std::vector<Vec2> pico_position_m;     // pico centers, macro at origin
  std::vector<double> tx_power_w;        // P_0..P_M, index 0 = macro
  double noise_power_w = 0.0;            // sigma^2
  double pathloss_exponent = 0.0;        // alpha > 2
  double user_density_per_m2 = 0.0;      // lambda
  double total_bandwidth_hz = 0.0;       // W
  double buffer_delay_s = 0.0;           // D
  std::vector<double> storage_bits;      // C_m, one per pico
  FileCatalog catalog;

  int picos() const { return static_cast<int>(pico_radius_m.size()); }
  // Distance from the macro BS to pico bs (1-based BS index).
  double fronthaul_distance_m(int bs) const;
  // Serving-region area A_m: pi r_m^2 for a pico BS, pi (r_0^2 - sum r_n^2)
  // for the macro (bs = 0).
  double region_area_m2(int bs) const;
};

struct ValidationIssue {
  std::string code;    // short machine tag, e.g. "pico-overlap"
  std::string detail;  // human text with offending indices
};
using ValidationReport = std::vector<ValidationIssue>;

// Reports every violated scenario invariant; empty means valid.
ValidationReport validate_scenario(const NetworkScenario& scn);

// Cached fraction per (pico, file), row-major M x F.
struct CachePlacement {
  int picos = 0;
  int files = 0;
  std::vector<double> s;

  static CachePlacement zeros(int picos, int files);

  double& at(int m, int f) { return s[static_cast<size_t>(m) * files + f]; }
  double at(int m, int f) const { return s[static_cast<size_t>(m) * files + f]; }
  std::span<const double> row(int m) const {
    return {s.data() + static_cast<size_t>(m) * files, static_cast<size_t>(files)};
  }
  void set_row(int m, std::span<const double> values);

  double cached_bits(const FileCatalog& catalog, int m) const;
};

// w[0] = shared access band, w[1..M] = fronthaul bands.
struct BandwidthAllocation {
  std::vector<double> w;
  double total() const;
};

// Closed-form delay coefficients, all in s*Hz/bit.
struct DelayCoefficients {
  std::vector<double> access;     // a_0..a_M, indexed by BS
  std::vector<double> fronthaul;  // b_1..b_M, fronthaul[m-1] for pico bs m

  double a(int bs) const { return access[bs]; }
  double b(int bs) const { return fronthaul[bs - 1]; }
};

// Row (1,...,1, frac, 0,...,0) with `frac` at 0-based position file_index.
// Throws ConstraintError if the row exceeds capacity_bits.
std::vector<double> prefix_placement(const FileCatalog& catalog, double capacity_bits,
                                     int file_index, double frac);

}  // namespace hetcache

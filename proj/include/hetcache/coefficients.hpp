#pragma once

#include <cstdint>

#include "hetcache/model.hpp"

namespace hetcache {

// Quadrature controls for the access-coefficient integral.
struct QuadSpec {
  // Stop refining the spatial grid when two consecutive levels agree to this
  // relative difference.
  double spatial_rtol = 1e-4;
  // Grid levels double the node counts; level 0 is base_radial x base_angular.
  int max_levels = 6;
  int base_radial = 16;
  int base_angular = 32;
  // Per-panel tolerance of the rate integral (panels of width 1 in r).
  double rate_panel_rtol = 1e-9;
  // Stop the rate integral once the analytic tail bound drops below this
  // fraction of the accumulated value.
  double tail_rtol = 1e-12;
  int max_panels = 128;
};

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  long long samples = 0;
  uint64_t seed = 0;
};

// b_m = ln2 / (e^x E1(x)) with x = sigma^2 / (P_0 d^-alpha).
// Average fronthaul download time times bandwidth per bit.
double fronthaul_coefficient(double macro_power_w, double distance_m, double pathloss_exponent,
                             double noise_power_w);

// a_m = 1 / (kappa_m * E[Rbar_m]) where E[Rbar_m] is the layer-cake integral
// of the SINR rate CCDF averaged uniformly over serving region m.
double access_coefficient(const NetworkScenario& scn, int bs, const QuadSpec& spec = {});

// P[Rbar_m > rate] on the given refinement level's grid. Diagnostic surface;
// equals 1 at rate 0 by construction.
double access_rate_ccdf(const NetworkScenario& scn, int bs, double rate, int level = 2);

// Monte Carlo estimate of a_m: users ~ truncated Poisson, location uniform on
// the region, Rayleigh (Exp(1)) power fading on every link. Deterministic for
// a fixed seed.
McEstimate mc_access_coefficient(const NetworkScenario& scn, int bs, long long samples,
                                 uint64_t seed);

// Monte Carlo estimate of 1/b_m's rate, i.e. E[log2(1 + h/x)], h ~ Exp(1).
McEstimate mc_fronthaul_rate(double x, long long samples, uint64_t seed);

// All coefficients of a scenario: a_0..a_M by quadrature, b_1..b_M closed
// form. Numeric failures are rethrown with the BS index attached.
DelayCoefficients compute_coefficients(const NetworkScenario& scn, const QuadSpec& spec = {});

}  // namespace hetcache

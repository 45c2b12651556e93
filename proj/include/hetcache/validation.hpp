#pragma once

#include <string>
#include <vector>

#include "hetcache/coefficients.hpp"
#include "hetcache/model.hpp"
#include "hetcache/rng.hpp"

namespace hetcache {

// Reference implementations for cross-checking, deliberately on different
// algorithms than special_fn: adaptive Simpson for E1, the quadrature
// identity Ei(x) = gamma + ln x + int_0^x (e^t - 1)/t dt, the direct
// conditioned-Poisson series for kappa.
double oracle_e1(double x);
double oracle_ei(double x);
double oracle_kappa(double mean);

// Seeded generators for the oracle suites.
FileCatalog random_catalog(Rng& rng, int files);
// Geometrically valid scenario with a random catalog; coefficients for
// solver-level checks come from random_coefficients, not from quadrature.
NetworkScenario random_small_scenario(Rng& rng, int picos, int files);
DelayCoefficients random_coefficients(Rng& rng, int picos);
CachePlacement random_feasible_placement(Rng& rng, const NetworkScenario& scn);

struct CheckResult {
  std::string name;
  bool pass = false;
  double value = 0.0;  // measured gap/residual
  double bound = 0.0;
  std::string detail;
};

// Named oracle suites: "special-fn", "coefficients", "fixed-bw", "bandwidth",
// "icp", or "all". Scenario-dependent suites run on `scn`; mc_samples
// controls the coefficients cross-check.
std::vector<CheckResult> run_validation_suite(const std::string& suite,
                                              const NetworkScenario& scn, uint64_t seed,
                                              long long mc_samples = 1000000);

}  // namespace hetcache

#pragma once

#include <string>
#include <vector>

#include "hetcache/coefficients.hpp"
#include "hetcache/model.hpp"

namespace hetcache {

struct LoadedScenario {
  NetworkScenario scenario;
  std::vector<std::string> warnings;  // e.g. popularity ties perturbed
};

// Reads a scenario JSON (units m/W/Hz/s/bits). The catalog is either explicit
// {"length_bits": [...], "popularities": [...]} or generated via
// {"zipf": {"F": n, "nu": x}, "length_bits": scalar-or-array}. Exact
// popularity ties are perturbed downward by a relative 4e-12 cascade with a
// warning so the strict-order invariant holds.
LoadedScenario load_scenario_json(const std::string& path);
LoadedScenario parse_scenario_json(const std::string& text, const std::string& origin = "inline");

std::string scenario_to_json(const NetworkScenario& scn);

// Coefficient cache files so sweeps can skip the quadrature.
std::string coefficients_to_json(const DelayCoefficients& coeffs);
DelayCoefficients coefficients_from_json_text(const std::string& text);
DelayCoefficients load_coefficients_json(const std::string& path);

// The desk-scale default scenario (F = 100) or the full-size one (F = 1000).
NetworkScenario make_default_scenario(bool scaled = true);

}  // namespace hetcache

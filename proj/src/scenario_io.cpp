#include "hetcache/scenario_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace hetcache {

namespace {

using json = nlohmann::ordered_json;

std::vector<double> to_vector(const json& j, const std::string& field) {
  if (!j.is_array()) throw InputError("scenario field '" + field + "' must be an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) throw InputError("scenario field '" + field + "' must be numeric");
    out.push_back(v.get<double>());
  }
  return out;
}

double to_number(const json& j, const std::string& field) {
  if (!j.contains(field) || !j[field].is_number())
    throw InputError("scenario field '" + field + "' missing or not numeric");
  return j[field].get<double>();
}

// Strictly decreasing popularities are required downstream; exact ties are
// nudged down by a relative cascade small enough to be physically meaningless.
int break_popularity_ties(std::vector<double>& q) {
  constexpr double margin = 4e-12;
  int fixed = 0;
  for (size_t f = 1; f < q.size(); ++f) {
    double limit = q[f - 1] * (1.0 - margin);
    if (q[f] > limit) {
      q[f] = limit;
      ++fixed;
    }
  }
  if (fixed > 0) {
    double sum = 0.0;
    for (double v : q) sum += v;
    for (double& v : q) v /= sum;
  }
  return fixed;
}

FileCatalog parse_catalog(const json& j, std::vector<std::string>& warnings) {
  if (!j.is_object()) throw InputError("scenario field 'catalog' must be an object");
  FileCatalog catalog;
  if (j.contains("zipf")) {
    const json& z = j["zipf"];
    int files = static_cast<int>(to_number(z, "F"));
    double nu = to_number(z, "nu");
    catalog.popularity = zipf_popularity(files, nu);
    if (!j.contains("length_bits")) throw InputError("zipf catalog needs 'length_bits'");
    if (j["length_bits"].is_number()) {
      catalog.length_bits.assign(files, j["length_bits"].get<double>());
    } else {
      catalog.length_bits = to_vector(j["length_bits"], "length_bits");
    }
  } else {
    catalog.length_bits = to_vector(j.value("length_bits", json::array()), "length_bits");
    catalog.popularity = to_vector(j.value("popularities", json::array()), "popularities");
  }
  int fixed = break_popularity_ties(catalog.popularity);
  if (fixed > 0) {
    std::ostringstream os;
    os << "perturbed " << fixed << " popularity tie(s) to restore strict ordering";
    warnings.push_back(os.str());
  }
  return catalog;
}

}  // namespace

LoadedScenario parse_scenario_json(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(origin + ": JSON parse error: " + e.what());
  }
  if (!j.is_object()) throw InputError(origin + ": scenario document must be a JSON object");

  LoadedScenario loaded;
  NetworkScenario& scn = loaded.scenario;
  try {
    scn.macro_radius_m = to_number(j, "macro_radius_m");
    scn.pico_radius_m = to_vector(j.value("pico_radii_m", json::array()), "pico_radii_m");
    if (j.contains("pico_positions_m")) {
      for (const auto& p : j["pico_positions_m"]) {
        if (!p.is_array() || p.size() != 2)
          throw InputError("pico_positions_m entries must be [x, y]");
        scn.pico_position_m.push_back({p[0].get<double>(), p[1].get<double>()});
      }
    }
    scn.tx_power_w = to_vector(j.value("tx_powers_w", json::array()), "tx_powers_w");
    scn.noise_power_w = to_number(j, "noise_power_w");
    scn.pathloss_exponent = to_number(j, "pathloss_exponent");
    scn.user_density_per_m2 = to_number(j, "user_density_per_m2");
    scn.total_bandwidth_hz = to_number(j, "total_bandwidth_hz");
    scn.buffer_delay_s = to_number(j, "buffer_delay_s");
    scn.storage_bits = to_vector(j.value("storage_bits", json::array()), "storage_bits");
    if (!j.contains("catalog")) throw InputError("scenario needs a 'catalog'");
    scn.catalog = parse_catalog(j["catalog"], loaded.warnings);
  } catch (const json::exception& e) {
    throw InputError(origin + ": " + e.what());
  }
  return loaded;
}

LoadedScenario load_scenario_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open scenario file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario_json(buffer.str(), path);
}

std::string scenario_to_json(const NetworkScenario& scn) {
  json j;
  j["macro_radius_m"] = scn.macro_radius_m;
  j["pico_radii_m"] = scn.pico_radius_m;
  json positions = json::array();
  for (const Vec2& p : scn.pico_position_m) positions.push_back({p.x, p.y});
  j["pico_positions_m"] = positions;
  j["tx_powers_w"] = scn.tx_power_w;
  j["noise_power_w"] = scn.noise_power_w;
  j["pathloss_exponent"] = scn.pathloss_exponent;
  j["user_density_per_m2"] = scn.user_density_per_m2;
  j["total_bandwidth_hz"] = scn.total_bandwidth_hz;
  j["buffer_delay_s"] = scn.buffer_delay_s;
  j["storage_bits"] = scn.storage_bits;
  j["catalog"]["length_bits"] = scn.catalog.length_bits;
  j["catalog"]["popularities"] = scn.catalog.popularity;
  return j.dump(2) + "\n";
}

std::string coefficients_to_json(const DelayCoefficients& coeffs) {
  json j;
  j["access"] = coeffs.access;
  j["fronthaul"] = coeffs.fronthaul;
  return j.dump(2) + "\n";
}

DelayCoefficients coefficients_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("coefficients JSON parse error: ") + e.what());
  }
  DelayCoefficients coeffs;
  coeffs.access = to_vector(j.value("access", json::array()), "access");
  coeffs.fronthaul = to_vector(j.value("fronthaul", json::array()), "fronthaul");
  if (coeffs.access.size() != coeffs.fronthaul.size() + 1)
    throw InputError("coefficients JSON: need one access entry per BS (picos + macro)");
  for (double v : coeffs.access)
    if (!(v > 0.0) || !std::isfinite(v)) throw InputError("coefficients must be positive");
  for (double v : coeffs.fronthaul)
    if (!(v > 0.0) || !std::isfinite(v)) throw InputError("coefficients must be positive");
  return coeffs;
}

DelayCoefficients load_coefficients_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open coefficients file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return coefficients_from_json_text(buffer.str());
}

NetworkScenario make_default_scenario(bool scaled) {
  NetworkScenario scn;
  scn.macro_radius_m = 1000.0;
  scn.pico_radius_m = {150.0, 150.0, 150.0};
  scn.pico_position_m = {{-339.0, 741.0}, {218.0, -230.0}, {561.0, -457.0}};
  scn.tx_power_w = {20.0, 1.0, 1.0, 1.0};
  scn.noise_power_w = 1e-13;
  scn.pathloss_exponent = 3.76;
  scn.user_density_per_m2 = 500.0 / 1e6;  // 500 users per km^2
  scn.total_bandwidth_hz = 10e6;
  scn.buffer_delay_s = 5.0;
  const int files = scaled ? 100 : 1000;
  const double storage = scaled ? 100e6 : 1000e6;  // keeps C / sum L = 0.1
  scn.storage_bits = {storage, storage, storage};
  scn.catalog.length_bits.assign(files, 10e6);
  scn.catalog.popularity = zipf_popularity(files, 0.8);
  return scn;
}

}  // namespace hetcache

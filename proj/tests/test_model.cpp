#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "hetcache/model.hpp"
#include "hetcache/scenario_io.hpp"

using namespace hetcache;

namespace {

bool has_code(const ValidationReport& report, const std::string& code) {
  for (const auto& issue : report)
    if (issue.code == code) return true;
  return false;
}

}  // namespace

TEST_CASE("zipf popularity basics") {
  auto uniform = zipf_popularity(4, 0.0);
  for (double q : uniform) CHECK(q == doctest::Approx(0.25).epsilon(1e-14));

  auto harmonic = zipf_popularity(3, 1.0);
  CHECK(harmonic[0] == doctest::Approx(6.0 / 11.0).epsilon(1e-14));
  CHECK(harmonic[1] == doctest::Approx(3.0 / 11.0).epsilon(1e-14));
  CHECK(harmonic[2] == doctest::Approx(2.0 / 11.0).epsilon(1e-14));

  // Frozen from the direct-summation oracle.
  auto big = zipf_popularity(1000, 0.8);
  CHECK(big[0] == doctest::Approx(0.06464203343751789).epsilon(1e-12));

  CHECK_THROWS_AS(zipf_popularity(0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(zipf_popularity(5, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(zipf_popularity(5, std::nan("")), std::invalid_argument);
}

TEST_CASE("zipf sums to one and is scale invariant") {
  for (int files : {1, 7, 1000, 1000000}) {
    for (double nu : {0.0, 0.4, 1.0, 3.0}) {
      auto q = zipf_popularity(files, nu);
      // Compensated re-summation; a naive loop's own rounding would swamp
      // the 1e-12 bound at a million entries.
      double sum = 0.0, comp = 0.0;
      for (double v : q) {
        double y = v - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
      }
      CHECK(std::fabs(sum - 1.0) < 1e-12);
      // Normalization property: q_f / q_1 must equal the unnormalized ratio.
      int probe = std::min(files - 1, 17);
      if (probe > 0) {
        double expected = std::pow(static_cast<double>(probe + 1), -nu);
        CHECK(q[probe] / q[0] == doctest::Approx(expected).epsilon(1e-12));
      }
      // Nonincreasing always, strictly decreasing when nu > 0.
      for (int f = 1; f < files; f += std::max(files / 7, 1)) {
        CHECK(q[f] <= q[f - 1]);
        if (nu > 0.0) CHECK(q[f] < q[f - 1]);
      }
    }
  }
}

TEST_CASE("default scenario validates cleanly") {
  CHECK(validate_scenario(make_default_scenario(true)).empty());
  CHECK(validate_scenario(make_default_scenario(false)).empty());
}

TEST_CASE("each perturbation breaks exactly its own invariant") {
  NetworkScenario base = make_default_scenario(true);

  NetworkScenario overlap = base;
  overlap.pico_position_m[0] = overlap.pico_position_m[1];
  auto report = validate_scenario(overlap);
  CHECK(report.size() == 1);
  CHECK(has_code(report, "pico-overlap"));

  NetworkScenario outside = base;
  outside.pico_position_m[2] = {950.0, 0.0};
  report = validate_scenario(outside);
  CHECK(report.size() == 1);
  CHECK(has_code(report, "pico-containment"));

  NetworkScenario full_cache = base;
  full_cache.storage_bits[1] = full_cache.catalog.total_bits();
  report = validate_scenario(full_cache);
  CHECK(report.size() == 1);
  CHECK(has_code(report, "storage-capacity"));

  NetworkScenario low_alpha = base;
  low_alpha.pathloss_exponent = 2.0;
  report = validate_scenario(low_alpha);
  CHECK(report.size() == 1);
  CHECK(has_code(report, "pathloss"));

  NetworkScenario zero_d = base;
  zero_d.buffer_delay_s = 0.0;
  report = validate_scenario(zero_d);
  CHECK(report.size() == 1);
  CHECK(has_code(report, "positivity"));

  NetworkScenario bad_catalog = base;
  std::swap(bad_catalog.catalog.popularity[2], bad_catalog.catalog.popularity[3]);
  report = validate_scenario(bad_catalog);
  CHECK(report.size() == 1);
  CHECK(has_code(report, "catalog"));
}

TEST_CASE("catalog invariant checks") {
  FileCatalog catalog;
  catalog.length_bits = {1e6, 1e6};
  catalog.popularity = {0.6, 0.4};
  CHECK(catalog.check().empty());

  catalog.popularity = {0.5, 0.5};
  CHECK(!catalog.check().empty());

  catalog.popularity = {0.7, 0.4};  // sums above 1
  CHECK(!catalog.check().empty());

  catalog.popularity = {0.6, 0.4};
  catalog.length_bits[1] = 0.0;
  CHECK(!catalog.check().empty());
}

TEST_CASE("prefix placement rows") {
  FileCatalog catalog;
  catalog.length_bits = {1e6, 1e6, 1e6, 1e6};
  catalog.popularity = {0.4, 0.3, 0.2, 0.1};

  auto row = prefix_placement(catalog, 4e6, 1, 0.5);
  CHECK(row == std::vector<double>{1.0, 0.5, 0.0, 0.0});

  auto empty = prefix_placement(catalog, 4e6, 0, 0.0);
  CHECK(empty == std::vector<double>{0.0, 0.0, 0.0, 0.0});

  // 1.5 Mbit needed, 1.2 Mbit available.
  FileCatalog three;
  three.length_bits = {1e6, 1e6, 1e6};
  three.popularity = {0.5, 0.3, 0.2};
  CHECK_THROWS_AS(prefix_placement(three, 1.2e6, 1, 0.5), ConstraintError);

  CHECK_THROWS_AS(prefix_placement(catalog, 4e6, 4, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(prefix_placement(catalog, 4e6, 1, 1.5), std::invalid_argument);

  // Rows are nonincreasing by construction.
  for (int f = 0; f < 4; ++f) {
    auto r = prefix_placement(catalog, 4e6, f, 0.37);
    for (int l = 1; l < 4; ++l) CHECK(r[l] <= r[l - 1]);
  }
}

TEST_CASE("placement helpers") {
  FileCatalog catalog;
  catalog.length_bits = {2e6, 1e6};
  catalog.popularity = {0.7, 0.3};
  CachePlacement p = CachePlacement::zeros(2, 2);
  p.at(0, 0) = 1.0;
  p.at(0, 1) = 0.5;
  CHECK(p.cached_bits(catalog, 0) == doctest::Approx(2.5e6));
  CHECK(p.cached_bits(catalog, 1) == 0.0);
  std::vector<double> row{0.25, 0.0};
  p.set_row(1, row);
  CHECK(p.at(1, 0) == 0.25);
}

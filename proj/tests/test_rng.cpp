#include <cmath>
#include <initializer_list>

#include "doctest.h"
#include "hetcache/rng.hpp"

using namespace hetcache;

TEST_CASE("streams are deterministic and distinct") {
  Rng a = Rng::substream(42, 7);
  Rng b = Rng::substream(42, 7);
  Rng c = Rng::substream(42, 8);
  bool identical = true, distinct = false;
  for (int i = 0; i < 64; ++i) {
    uint64_t va = a.next_u64();
    identical = identical && va == b.next_u64();
    distinct = distinct || va != c.next_u64();
  }
  CHECK(identical);
  CHECK(distinct);
}

TEST_CASE("uniform and exponential moments") {
  Rng rng = Rng::substream(1, 0);
  const int n = 200000;
  double su = 0.0, se = 0.0;
  for (int i = 0; i < n; ++i) {
    su += rng.next_double();
    se += rng.next_exp();
  }
  CHECK(std::fabs(su / n - 0.5) < 0.005);
  CHECK(std::fabs(se / n - 1.0) < 0.01);
}

TEST_CASE("poisson sampler matches mean and variance") {
  for (double mean : {0.7, 3.5, 35.0, 1464.75}) {
    Rng rng = Rng::substream(5, static_cast<uint64_t>(mean * 100));
    const int n = 200000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
      double k = static_cast<double>(poisson_sample(rng, mean));
      s += k;
      s2 += k * k;
    }
    double m = s / n;
    double var = s2 / n - m * m;
    double se_mean = std::sqrt(mean / n);
    CHECK(std::fabs(m - mean) < 5.0 * se_mean);
    CHECK(std::fabs(var - mean) / mean < 0.05);
  }
}

TEST_CASE("truncated poisson conditions on >= 1") {
  Rng rng = Rng::substream(9, 3);
  const int n = 100000;
  const double mean = 1.2;
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    long long k = truncated_poisson_sample(rng, mean);
    CHECK(k >= 1);
    s += static_cast<double>(k);
  }
  double expected = mean / (1.0 - std::exp(-mean));
  CHECK(std::fabs(s / n - expected) < 0.02);
}

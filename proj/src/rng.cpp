#include "hetcache/rng.hpp"

#include <cmath>

namespace hetcache {

namespace {

uint64_t splitmix_step(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

Rng Rng::substream(uint64_t seed, uint64_t stream_id) {
  // Scramble the pair so neighboring stream ids start far apart.
  uint64_t s = seed ^ 0x6a09e667f3bcc909ull;
  (void)splitmix_step(s);
  s ^= stream_id * 0x9e3779b97f4a7c15ull;
  (void)splitmix_step(s);
  return Rng(s);
}

uint64_t Rng::next_u64() { return splitmix_step(state_); }

double Rng::next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Rng::next_open_double() {
  return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

double Rng::next_exp() { return -std::log(next_open_double()); }

double Rng::next_normal() {
  if (have_spare_normal_) {
    have_spare_normal_ = false;
    return spare_normal_;
  }
  double u, v, s;
  do {
    u = 2.0 * next_double() - 1.0;
    v = 2.0 * next_double() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  double factor = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = v * factor;
  have_spare_normal_ = true;
  return u * factor;
}

namespace {

long long poisson_inversion(Rng& rng, double mean) {
  double p = std::exp(-mean);
  double cdf = p;
  double u = rng.next_double();
  long long k = 0;
  while (u > cdf && k < 4000) {
    ++k;
    p *= mean / static_cast<double>(k);
    cdf += p;
  }
  return k;
}

// Hormann (1993) PTRS transformed rejection, exact for mean >= 10.
long long poisson_ptrs(Rng& rng, double mean) {
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    double u = rng.next_double() - 0.5;
    double v = rng.next_double();
    double us = 0.5 - std::fabs(u);
    double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<long long>(kf);
    if (kf < 0.0 || (us < 0.013 && v > us)) continue;
    double k = kf;
    if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
        k * loglam - mean - std::lgamma(k + 1.0))
      return static_cast<long long>(kf);
  }
}

}  // namespace

long long poisson_sample(Rng& rng, double mean) {
  return mean < 10.0 ? poisson_inversion(rng, mean) : poisson_ptrs(rng, mean);
}

long long truncated_poisson_sample(Rng& rng, double mean) {
  for (;;) {
    long long k = poisson_sample(rng, mean);
    if (k >= 1) return k;
  }
}

}  // namespace hetcache

#pragma once

#include <cstdint>

namespace hetcache {

// SplitMix64 stream. Pure integer arithmetic, so a (seed, stream) pair gives
// the same draws on every platform. Streams for independent tasks are derived
// with substream().
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  static Rng substream(uint64_t seed, uint64_t stream_id);

  uint64_t next_u64();
  // Uniform in [0, 1) with 53 random bits.
  double next_double();
  // Uniform in (0, 1]; safe as a log() argument.
  double next_open_double();
  // Exponential(1).
  double next_exp();
  // Standard normal (polar method).
  double next_normal();

 private:
  uint64_t state_;
  bool have_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

// Exact Poisson(mean) draw: sequential inversion for small means, Hormann's
// PTRS transformed rejection for mean >= 10.
long long poisson_sample(Rng& rng, double mean);

// Poisson(mean) conditioned on the result being >= 1.
long long truncated_poisson_sample(Rng& rng, double mean);

}  // namespace hetcache

#pragma once

#include <cstdint>
#include <random>

namespace qsched {

/// Seeded random stream. Identical seed and call sequence give identical
/// outputs; the sampling algorithms below are implemented in-repo because
/// the standard library distributions are not reproducible across
/// implementations.
///
/// Each simulation run owns exactly one RandomSource; parallel runs use
/// distinct instances with independently derived seeds.
class RandomSource {
 public:
  explicit RandomSource(uint64_t seed) : seed_(seed), engine_(seed) {}

  uint64_t seed() const { return seed_; }

  uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound), bound >= 1. Rejection sampling, unbiased.
  int64_t uniform_int(int64_t bound);

  /// Poisson(mean) draw. Product-of-uniforms inversion for small means,
  /// transformed rejection (PTRS) for large ones; both exact.
  int64_t poisson(double mean);

  /// Binomial(trials, p) draw.
  int64_t binomial(int64_t trials, double p);

 private:
  int64_t binomial_small(int64_t trials, double p);

  uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Poisson arrival count with the given per-step mean.
int64_t sample_poisson(RandomSource& rng, double mean);

/// Number of stored ebits lost in one step: Binomial(stored, 1 - eta).
/// Never exceeds `stored`; eta = 1 loses nothing.
int64_t sample_losses(RandomSource& rng, int64_t stored, double eta);

/// Per-step survival probability from memory lifetime: exp(-dt / tau).
double eta_from_lifetime(double tau, double dt);

}  // namespace qsched

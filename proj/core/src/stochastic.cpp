#include "qsched/stochastic.hpp"

#include <cmath>
#include <stdexcept>

namespace qsched {

int64_t RandomSource::uniform_int(int64_t bound) {
  if (bound <= 0) throw std::invalid_argument("uniform_int: bound must be positive");
  const uint64_t n = static_cast<uint64_t>(bound);
  const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return static_cast<int64_t>(x % n);
}

int64_t RandomSource::poisson(double mean) {
  if (mean < 0 || !std::isfinite(mean))
    throw std::invalid_argument("poisson: mean must be finite and nonnegative");
  if (mean == 0) return 0;

  if (mean < 10.0) {
    // Multiplicative inversion (Knuth): count uniforms until the running
    // product drops below exp(-mean).
    const double limit = std::exp(-mean);
    int64_t k = 0;
    double prod = next_unit();
    while (prod > limit) {
      ++k;
      prod *= next_unit();
    }
    return k;
  }

  // Hormann's PTRS transformed rejection, exact for mean >= 10.
  const double b = 0.931 + 2.53 * std::sqrt(mean);
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  const double log_mean = std::log(mean);
  for (;;) {
    double u = next_unit() - 0.5;
    double v = next_unit();
    double us = 0.5 - std::abs(u);
    double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<int64_t>(kf);
    if (kf < 0 || (us < 0.013 && v > us)) continue;
    double k = kf;
    if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
        k * log_mean - mean - std::lgamma(k + 1.0))
      return static_cast<int64_t>(kf);
  }
}

int64_t RandomSource::binomial_small(int64_t trials, double p) {
  // Inversion by sequential CDF scan; expected cost O(trials * p).
  const double q = 1.0 - p;
  double pmf = std::exp(static_cast<double>(trials) * std::log1p(-p));
  if (pmf <= 0.0) {
    // q^trials underflowed; fall back to counting Bernoulli successes.
    int64_t count = 0;
    for (int64_t i = 0; i < trials; ++i)
      if (next_unit() < p) ++count;
    return count;
  }
  const double odds = p / q;
  double u = next_unit();
  int64_t k = 0;
  double cdf = pmf;
  while (u > cdf && k < trials) {
    pmf *= odds * static_cast<double>(trials - k) / static_cast<double>(k + 1);
    ++k;
    cdf += pmf;
  }
  return k;
}

int64_t RandomSource::binomial(int64_t trials, double p) {
  if (trials < 0) throw std::invalid_argument("binomial: trials must be nonnegative");
  if (p < 0.0 || p > 1.0 || !std::isfinite(p))
    throw std::invalid_argument("binomial: p must lie in [0, 1]");
  if (trials == 0 || p == 0.0) return 0;
  if (p == 1.0) return trials;

  // Sum of independent halves keeps the sequential scan short and its
  // starting pmf away from underflow for very long queues.
  int64_t total = 0;
  while (trials > 1024) {
    int64_t half = trials / 2;
    total += binomial_small(half, p);
    trials -= half;
  }
  return total + binomial_small(trials, p);
}

int64_t sample_poisson(RandomSource& rng, double mean) { return rng.poisson(mean); }

int64_t sample_losses(RandomSource& rng, int64_t stored, double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("sample_losses: eta must lie in (0, 1]");
  if (stored < 0) throw std::invalid_argument("sample_losses: stored must be nonnegative");
  if (eta == 1.0 || stored == 0) return 0;
  return rng.binomial(stored, 1.0 - eta);
}

double eta_from_lifetime(double tau, double dt) {
  if (!(tau > 0.0)) throw std::invalid_argument("eta_from_lifetime: tau must be positive");
  if (dt < 0.0) throw std::invalid_argument("eta_from_lifetime: dt must be nonnegative");
  return std::exp(-dt / tau);
}

}  // namespace qsched

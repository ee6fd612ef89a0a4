#include <cmath>
#include <vector>

#include "doctest.h"
#include "qsched/stochastic.hpp"

using namespace qsched;

TEST_CASE("poisson sampling hits its mean and variance") {
  RandomSource rng(101);
  CHECK(sample_poisson(rng, 0.0) == 0);

  const int n = 1'000'000;
  double sum = 0, sum2 = 0;
  for (int i = 0; i < n; ++i) {
    const double x = static_cast<double>(sample_poisson(rng, 1.0));
    sum += x;
    sum2 += x * x;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  CHECK(mean == doctest::Approx(1.0).epsilon(0.01));
  CHECK(var == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("poisson rejection path is calibrated for large means") {
  RandomSource rng(202);
  const int n = 400'000;
  const double lambda = 50.0;
  double sum = 0, sum2 = 0;
  for (int i = 0; i < n; ++i) {
    const double x = static_cast<double>(sample_poisson(rng, lambda));
    sum += x;
    sum2 += x * x;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  CHECK(mean == doctest::Approx(lambda).epsilon(0.005));
  CHECK(var == doctest::Approx(lambda).epsilon(0.02));
}

TEST_CASE("poisson rejects negative means") {
  RandomSource rng(1);
  CHECK_THROWS_AS(sample_poisson(rng, -0.5), std::invalid_argument);
}

TEST_CASE("losses are binomial in the stored count") {
  RandomSource rng(303);
  CHECK(sample_losses(rng, 10, 1.0) == 0);
  CHECK(sample_losses(rng, 0, 0.5) == 0);

  const int n = 1'000'000;
  const int64_t stored = 10;
  int64_t total = 0;
  for (int i = 0; i < n; ++i) {
    const int64_t l = sample_losses(rng, stored, 0.9);
    REQUIRE(l <= stored);
    REQUIRE(l >= 0);
    total += l;
  }
  const double mean = static_cast<double>(total) / n;
  CHECK(mean == doctest::Approx(0.1 * stored).epsilon(0.02));

  CHECK_THROWS_AS(sample_losses(rng, 5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(sample_losses(rng, 5, 1.2), std::invalid_argument);
  CHECK_THROWS_AS(sample_losses(rng, -1, 0.9), std::invalid_argument);
}

TEST_CASE("losses never exceed storage across regimes") {
  RandomSource rng(404);
  for (int trial = 0; trial < 20'000; ++trial) {
    const int64_t stored = rng.uniform_int(5000);
    const double eta = 0.05 + 0.95 * rng.next_unit();
    const int64_t l = sample_losses(rng, stored, eta);
    REQUIRE(l >= 0);
    REQUIRE(l <= stored);
  }
}

TEST_CASE("single ebit lifetimes are geometric with mean 1/(1-eta)") {
  RandomSource rng(505);
  const int n = 1'000'000;
  int64_t total = 0;
  for (int i = 0; i < n; ++i) {
    int64_t life = 0;
    do {
      ++life;
    } while (sample_losses(rng, 1, 0.9) == 0);
    total += life;
  }
  const double mean = static_cast<double>(total) / n;
  CHECK(mean == doctest::Approx(10.0).epsilon(0.02));
}

TEST_CASE("lifetime distribution passes a goodness-of-fit check") {
  // Chi-square against Geometric(1 - eta) with 10 bins (tail merged);
  // 30 is well past the 0.1% critical value for 9 degrees of freedom.
  for (const double eta : {0.5, 0.9, 0.99}) {
    RandomSource rng(606);
    const int n = 100'000;
    const int bins = 10;
    std::vector<int64_t> counts(bins, 0);
    for (int i = 0; i < n; ++i) {
      int64_t life = 0;
      do {
        ++life;
      } while (sample_losses(rng, 1, eta) == 0);
      counts[std::min<int64_t>(life - 1, bins - 1)] += 1;
    }
    double chi2 = 0;
    for (int k = 0; k < bins; ++k) {
      const double p = k < bins - 1 ? std::pow(eta, k) * (1 - eta) : std::pow(eta, bins - 1);
      const double expected = p * n;
      chi2 += (counts[k] - expected) * (counts[k] - expected) / expected;
    }
    CHECK(chi2 < 30.0);
  }
}

TEST_CASE("eta follows the exponential memory-decay law") {
  CHECK(eta_from_lifetime(10.0, 0.0) == 1.0);
  CHECK(eta_from_lifetime(10e-6, 1e-6) == doctest::Approx(std::exp(-0.1)).epsilon(1e-12));
  CHECK(eta_from_lifetime(10.0, 10.0 * std::log(2.0)) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(eta_from_lifetime(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(eta_from_lifetime(-1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(eta_from_lifetime(1.0, -1.0), std::invalid_argument);
}

TEST_CASE("equal seeds reproduce equal streams") {
  RandomSource a(9999), b(9999);
  for (int i = 0; i < 1000; ++i) {
    CHECK(a.poisson(1.3) == b.poisson(1.3));
    CHECK(a.binomial(17, 0.25) == b.binomial(17, 0.25));
    CHECK(a.uniform_int(97) == b.uniform_int(97));
  }
  RandomSource c(10000);
  bool any_diff = false;
  for (int i = 0; i < 100; ++i) any_diff |= (a.next_u64() != c.next_u64());
  CHECK(any_diff);
}

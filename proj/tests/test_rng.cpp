#include <doctest.h>

#include <cmath>

#include "shrinkvar/rng.hpp"
#include "shrinkvar/stats.hpp"

using namespace shrinkvar;

TEST_CASE("rng: same seed reproduces the stream, derived streams differ") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());

  Rng base(42);
  Rng d1 = base.derive(1);
  Rng d2 = base.derive(2);
  CHECK(d1.next() != d2.next());
  // Deriving does not advance the parent.
  Rng base2(42);
  for (int i = 0; i < 3; ++i) (void)base2.derive(9);
  Rng base3(42);
  CHECK(base2.next() == base3.next());
}

TEST_CASE("rng: seed_stream is a pure function") {
  CHECK(seed_stream(1, 2) == seed_stream(1, 2));
  CHECK(seed_stream(1, 2) != seed_stream(1, 3));
  CHECK(seed_stream(1, 2) != seed_stream(2, 2));
  CHECK(seed_stream(5, 1, 2) == seed_stream(seed_stream(5, 1), 2));
}

TEST_CASE("rng: uniform_int is unbiased over small ranges") {
  Rng rng(7);
  int counts[3] = {0, 0, 0};
  const int n = 60000;
  for (int i = 0; i < n; ++i) ++counts[rng.uniform_int(3)];
  for (int c : counts) CHECK(std::abs(c / static_cast<double>(n) - 1.0 / 3) < 0.01);
}

TEST_CASE("rng: distribution moments") {
  Rng rng(2024);
  const int n = 200000;

  SUBCASE("normal") {
    double s = 0, s2 = 0;
    for (int i = 0; i < n; ++i) {
      const double x = rng.normal();
      s += x;
      s2 += x * x;
    }
    CHECK(std::abs(s / n) < 0.01);
    CHECK(std::abs(s2 / n - 1.0) < 0.02);
  }

  SUBCASE("gamma(3, 2) mean 6 variance 12") {
    double s = 0, s2 = 0;
    for (int i = 0; i < n; ++i) {
      const double x = rng.gamma(3.0, 2.0);
      s += x;
      s2 += x * x;
    }
    const double mean = s / n;
    CHECK(std::abs(mean - 6.0) < 0.05);
    CHECK(std::abs(s2 / n - mean * mean - 12.0) < 0.5);
  }

  SUBCASE("gamma shape below one") {
    double s = 0;
    for (int i = 0; i < n; ++i) s += rng.gamma(0.5, 2.0);
    CHECK(std::abs(s / n - 1.0) < 0.02);
  }

  SUBCASE("inverse_gaussian(2, 5) mean 2 variance mu^3/lambda") {
    double s = 0, s2 = 0;
    for (int i = 0; i < n; ++i) {
      const double x = rng.inverse_gaussian(2.0, 5.0);
      s += x;
      s2 += x * x;
    }
    const double mean = s / n;
    CHECK(std::abs(mean - 2.0) < 0.03);
    CHECK(std::abs(s2 / n - mean * mean - 8.0 / 5.0) < 0.1);
  }

  SUBCASE("half_cauchy quantiles") {
    std::vector<double> draws(n);
    for (auto& x : draws) x = rng.half_cauchy(1.0);
    CHECK(stats::ks_statistic(draws, [](double x) { return stats::half_cauchy_cdf(x, 1.0); }) <
          0.01);
  }
}

TEST_CASE("stats: normal quantile inverts the CDF") {
  for (double p : {0.001, 0.025, 0.2, 0.5, 0.8, 0.975, 0.999}) {
    CHECK(stats::normal_cdf(stats::normal_quantile(p)) == doctest::Approx(p).epsilon(1e-10));
  }
  CHECK(stats::normal_quantile(0.975) == doctest::Approx(1.959964).epsilon(1e-6));
}

TEST_CASE("stats: type-7 quantile matches hand values") {
  std::vector<double> draws;
  for (int i = 1; i <= 100; ++i) draws.push_back(i);
  CHECK(stats::quantile_type7(draws, 0.025) == doctest::Approx(3.475).epsilon(1e-12));
  CHECK(stats::quantile_type7(draws, 0.975) == doctest::Approx(97.525).epsilon(1e-12));
  CHECK(stats::quantile_type7({5.0}, 0.3) == 5.0);
}

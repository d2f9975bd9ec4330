#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "ehma/binomial.hpp"

using namespace ehma;

TEST_CASE("binomial pmf point values") {
  CHECK(binomial_pmf(0, 5, 0.0) == 1.0);
  CHECK(binomial_pmf(3, 5, 0.0) == 0.0);
  CHECK(binomial_pmf(2, 2, 0.5) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(binomial_pmf(5, 5, 1.0) == 1.0);
  CHECK(binomial_pmf(4, 5, 1.0) == 0.0);
}

TEST_CASE("binomial pmf normalizes") {
  double sum = 0.0;
  for (int k = 0; k <= 20; ++k) sum += binomial_pmf(k, 20, 1.0 / 6.0);
  CHECK(std::abs(sum - 1.0) <= 1e-12);

  // Stability at n = 1000: still normalized and with the right mean.
  double sum_big = 0.0;
  double mean_big = 0.0;
  for (int k = 0; k <= 1000; ++k) {
    const double p = binomial_pmf(k, 1000, 0.37);
    sum_big += p;
    mean_big += k * p;
  }
  CHECK(std::abs(sum_big - 1.0) <= 1e-9);
  CHECK(std::abs(mean_big - 370.0) <= 1e-6);
}

TEST_CASE("binomial pmf rejects bad arguments") {
  CHECK_THROWS_AS(binomial_pmf(3, 2, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(binomial_pmf(-1, 2, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(binomial_pmf(1, 2, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(binomial_pmf(1, 2, -0.5), std::invalid_argument);
}

TEST_CASE("binomial coefficients") {
  CHECK(binomial_coefficient(0, 0) == 1.0);
  CHECK(binomial_coefficient(5, 2) == 10.0);
  CHECK(binomial_coefficient(20, 10) == 184756.0);
  // C(64, 32) = 1832624140942590534; Pascal rows keep it to ~1e-14 relative.
  CHECK(binomial_coefficient(64, 32) ==
        doctest::Approx(1.832624140942590534e18).epsilon(1e-13));
  CHECK(std::exp(log_binomial_coefficient(100, 50)) ==
        doctest::Approx(1.0089134454556417e29).epsilon(1e-10));
}

TEST_CASE("random pmf rows normalize and have binomial mean") {
  std::mt19937 gen(11);
  std::uniform_real_distribution<double> p_dist(0.0, 1.0);
  std::uniform_int_distribution<int> n_dist(1, 64);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = n_dist(gen);
    const double p = p_dist(gen);
    double sum = 0.0;
    double mean = 0.0;
    for (int k = 0; k <= n; ++k) {
      const double v = binomial_pmf(k, n, p);
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
      sum += v;
      mean += k * v;
    }
    CHECK(std::abs(sum - 1.0) <= 1e-12);
    CHECK(std::abs(mean - n * p) <= 1e-9);
  }
}

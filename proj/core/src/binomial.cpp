#include "ehma/binomial.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace ehma {

namespace {

constexpr int kPascalMax = 64;

// Rows 0..64 of Pascal's triangle. Doubles hold these with at most a few ulp
// of rounding (values stay far below the 1e308 range; additions above 2^53
// round but do not drift past ~1e-14 relative).
const std::vector<std::vector<double>>& pascal_rows() {
  static const std::vector<std::vector<double>> rows = [] {
    std::vector<std::vector<double>> r(kPascalMax + 1);
    for (int n = 0; n <= kPascalMax; ++n) {
      r[n].assign(static_cast<std::size_t>(n) + 1, 1.0);
      for (int k = 1; k < n; ++k) r[n][k] = r[n - 1][k - 1] + r[n - 1][k];
    }
    return r;
  }();
  return rows;
}

void check_kn(int n, int k) {
  if (n < 0) throw std::invalid_argument("binomial: n must be >= 0");
  if (k < 0 || k > n) throw std::invalid_argument("binomial: need 0 <= k <= n");
}

}  // namespace

double log_binomial_coefficient(int n, int k) {
  check_kn(n, k);
  if (k == 0 || k == n) return 0.0;
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double binomial_coefficient(int n, int k) {
  check_kn(n, k);
  if (n <= kPascalMax) return pascal_rows()[n][k];
  return std::exp(log_binomial_coefficient(n, k));
}

double binomial_pmf(int k, int n, double p) {
  check_kn(n, k);
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("binomial_pmf: p must lie in [0,1]");
  }
  if (p == 0.0) return k == 0 ? 1.0 : 0.0;
  if (p == 1.0) return k == n ? 1.0 : 0.0;
  const double log_pmf = log_binomial_coefficient(n, k) + k * std::log(p) +
                         (n - k) * std::log1p(-p);
  return std::exp(log_pmf);
}

}  // namespace ehma

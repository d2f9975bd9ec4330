#include "ehma/count_kernel.hpp"

#include <algorithm>
#include <stdexcept>

#include "ehma/binomial.hpp"

namespace ehma {

namespace {

std::vector<double> power_table(double base, int n) {
  std::vector<double> t(static_cast<std::size_t>(n) + 1);
  t[0] = 1.0;
  for (int j = 1; j <= n; ++j) t[j] = t[j - 1] * base;
  return t;
}

}  // namespace

CountKernel count_kernel(int n, const EhChain& chain) {
  if (n < 1) throw std::invalid_argument("count_kernel: n must be >= 1");

  const auto pl = power_table(chain.p_low, n);
  const auto ql = power_table(1.0 - chain.p_low, n);
  const auto ph = power_table(chain.p_high, n);
  const auto qh = power_table(1.0 - chain.p_high, n);

  CountKernel kernel;
  kernel.n = n;
  kernel.probs.assign(static_cast<std::size_t>(n + 1) * (n + 1), 0.0);

  // from = current active count, to = next; x = H->L switchers among the
  // `from` active nodes, x + to - from = L->H switchers among the rest.
  for (int from = 0; from <= n; ++from) {
    for (int to = 0; to <= n; ++to) {
      const int x_lo = std::max(0, from - to);
      const int x_hi = std::min(from, n - to);
      double p = 0.0;
      for (int x = x_lo; x <= x_hi; ++x) {
        const int up = x + to - from;  // L->H switchers, 0 <= up <= n - from
        p += binomial_coefficient(from, x) *
             binomial_coefficient(n - from, up) * pl[x] * ql[from - x] *
             ph[up] * qh[n - to - x];
      }
      kernel.probs[static_cast<std::size_t>(from) * (n + 1) + to] = p;
    }
  }
  return kernel;
}

}  // namespace ehma

#pragma once

namespace ehma {

/// log C(n, k); requires 0 <= k <= n.
double log_binomial_coefficient(int n, int k);

/// C(n, k) as a double. Exact to the last few ulp for n <= 64 (cached Pascal
/// rows); log-gamma fallback above that.
double binomial_coefficient(int n, int k);

/// C(n,k) p^k (1-p)^(n-k), stable for n up to at least 1e3 (log-domain with
/// exact handling of p = 0 and p = 1). Throws std::invalid_argument for
/// k < 0, k > n, or p outside [0,1].
double binomial_pmf(int k, int n, double p);

}  // namespace ehma

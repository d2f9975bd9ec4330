#include "ehma/policy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ehma/binomial.hpp"
#include "ehma/errors.hpp"

namespace ehma {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

void require_local_lambda_low_zero(const EhChain& chain) {
  require(chain.lambda_low == 0.0,
          "policy solvers assume lambda_low == 0");
}

// (1-u)^(m-2) computed as exp((m-2) log1p(-u)); stays accurate for large m
// where direct pow would lose precision to repeated rounding.
double one_minus_u_pow(double u, int exponent) {
  if (exponent == 0) return 1.0;
  return std::exp(exponent * std::log1p(-u));
}

double stationarity_lhs(int m, double u) {
  return one_minus_u_pow(u, m - 2) * (1.0 - m * u);
}

}  // namespace

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::kSingleActive: return "single_active";
    case Regime::kConstrained: return "constrained";
    case Regime::kUnconstrained: return "unconstrained";
  }
  return "unknown";
}

LocalPolicy local_optimal(int n, const EhChain& chain) {
  require(n >= 1, "local_optimal: n must be >= 1");
  require_local_lambda_low_zero(chain);
  const double budget = chain.lambda_high / chain.p_tx;
  const double collision_cap = 1.0 / (n * chain.pi_high());
  return {std::min({1.0, budget, collision_cap}), 0.0};
}

double local_throughput(int n, double q_bar) {
  require(n >= 1, "local_throughput: n must be >= 1");
  require(q_bar >= 0.0 && q_bar <= 1.0, "local_throughput: q_bar in [0,1]");
  return n * q_bar * std::pow(1.0 - q_bar, n - 1);
}

double instantaneous_throughput(std::span<const double> q, int channels) {
  require(channels >= 1, "instantaneous_throughput: channels >= 1");
  double total = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    require(q[i] >= 0.0 && q[i] <= 1.0, "instantaneous_throughput: q in [0,1]");
    double others_clear = q[i];
    for (std::size_t j = 0; j < q.size(); ++j) {
      if (j != i) others_clear *= 1.0 - q[j] / channels;
    }
    total += others_clear;
  }
  return total;
}

double genie_qbar(const GeniePolicy& policy, const EhChain& chain) {
  require(policy.n >= 1, "genie_qbar: policy.n must be >= 1");
  const double pi_h = chain.pi_high();
  double q = 0.0;
  // Other active nodes ~ Binomial(n-1, pi_H); the node itself is in H.
  for (int m = 0; m <= policy.n - 1; ++m) {
    q += binomial_pmf(m, policy.n - 1, pi_h) * policy.mu_at(m + 1);
  }
  return q;
}

double genie_rbar(const GeniePolicy& policy, const EhChain& chain) {
  require(policy.n >= 1, "genie_rbar: policy.n must be >= 1");
  const double pi_h = chain.pi_high();
  double r = 0.0;
  for (int m = 1; m <= policy.n; ++m) {
    const double mu = policy.mu_at(m);
    r += binomial_pmf(m, policy.n, pi_h) * m * mu * std::pow(1.0 - mu, m - 1);
  }
  return r;
}

double lambda_h_max(int n, const EhChain& chain) {
  require(n >= 1, "lambda_h_max: n must be >= 1");
  return chain.p_tx / (n * chain.pi_high()) *
         (1.0 - std::pow(chain.pi_low(), n));
}

double solve_mu_given_phi(int m, double phi, double eps_mu) {
  require(m >= 2, "solve_mu_given_phi: m must be >= 2");
  require(phi >= 0.0 && phi < 1.0, "solve_mu_given_phi: phi in [0,1)");
  require(eps_mu > 0.0, "solve_mu_given_phi: eps_mu must be > 0");
  double lo = 0.0;           // lhs(lo) = 1 > phi
  double hi = 1.0 / m;       // lhs(hi) = 0 <= phi
  for (int iter = 0; iter < 200 && hi - lo >= eps_mu; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval below double resolution
    if (stationarity_lhs(m, mid) > phi) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

PhiSolution solve_phi(int n, const EhChain& chain, double eps_phi,
                      double eps_mu) {
  require(n >= 2, "solve_phi: constrained regime needs n >= 2");
  require(eps_phi > 0.0 && eps_mu > 0.0, "solve_phi: tolerances must be > 0");
  require_local_lambda_low_zero(chain);

  const double threshold_single = chain.p_tx * std::pow(chain.pi_low(), n - 1);
  const double lam_max = lambda_h_max(n, chain);
  require(chain.lambda_high > threshold_single && chain.lambda_high < lam_max,
          "solve_phi: lambda_high must lie strictly between P_tx*pi_L^(n-1) "
          "and lambda_h_max");

  const double target = std::min(1.0, chain.lambda_high / chain.p_tx);

  GeniePolicy trial;
  trial.n = n;
  trial.mu.assign(static_cast<std::size_t>(n), 0.0);
  trial.mu[0] = 1.0;

  const auto qbar_at = [&](double phi) {
    for (int m = 2; m <= n; ++m) {
      trial.mu[static_cast<std::size_t>(m) - 1] =
          solve_mu_given_phi(m, phi, eps_mu);
    }
    return genie_qbar(trial, chain);
  };

  // genie_qbar is strictly decreasing in phi: qbar below target means phi is
  // too large. Bisect until the interval shrinks below eps_phi and the
  // residual itself is within eps_phi (the inner solves leave ~eps_mu of
  // noise, well under the default 1e-10).
  double lo = 0.0;
  double hi = 1.0;
  double phi = 0.5;
  double residual = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    phi = 0.5 * (lo + hi);
    const double qbar = qbar_at(phi);
    residual = qbar - target;
    if (hi - lo < eps_phi && std::abs(residual) <= eps_phi) break;
    if (residual < 0.0) {
      hi = phi;
    } else {
      lo = phi;
    }
    if (hi - lo <= 0.0) break;  // interval exhausted at double precision
  }
  if (std::abs(residual) > 1e-6) {
    throw solver_error("solve_phi: bisection failed to meet the power budget");
  }
  return {phi, trial.mu};
}

GeniePolicy genie_optimal(int n, const EhChain& chain, double eps_phi,
                          double eps_mu) {
  require(n >= 1, "genie_optimal: n must be >= 1");
  require(chain.lambda_high > 0.0, "genie_optimal: lambda_high must be > 0");
  require_local_lambda_low_zero(chain);

  const double threshold_single = chain.p_tx * std::pow(chain.pi_low(), n - 1);
  const double lam_max = lambda_h_max(n, chain);

  GeniePolicy policy;
  policy.n = n;
  policy.mu.assign(static_cast<std::size_t>(n), 0.0);

  if (chain.lambda_high <= threshold_single) {
    policy.regime = Regime::kSingleActive;
    policy.phi = 0.0;  // unused in this regime
    policy.mu[0] = chain.lambda_high / threshold_single;
    return policy;
  }
  if (chain.lambda_high >= lam_max) {
    policy.regime = Regime::kUnconstrained;
    policy.phi = 0.0;
    for (int m = 1; m <= n; ++m) {
      policy.mu[static_cast<std::size_t>(m) - 1] = 1.0 / m;
    }
    return policy;
  }
  PhiSolution sol = solve_phi(n, chain, eps_phi, eps_mu);
  policy.regime = Regime::kConstrained;
  policy.phi = sol.phi;
  policy.mu = std::move(sol.mu);
  return policy;
}

}  // namespace ehma

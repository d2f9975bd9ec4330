#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "ehma/eh_chain.hpp"

namespace ehma {

/// Transmission probabilities for a node that only knows its own harvesting
/// state. mu_low is identically 0: no energy is harvested in L, so the power
/// constraint forces silence there.
struct LocalPolicy {
  double mu_high = 0.0;
  double mu_low = 0.0;
};

enum class Regime {
  kSingleActive,   // budget so tight only a lone active node may transmit
  kConstrained,    // power constraint met with equality, interior multiplier
  kUnconstrained,  // budget slack, collision-optimal mu(m) = 1/m
};

std::string_view to_string(Regime regime);

/// Genie-aided policy: transmission probability as a function of the true
/// number of active nodes m = 1..n. `phi` is the common multiplier from the
/// stationarity condition (1-mu)^(m-2) (1-m*mu) = phi; it is interior in
/// (0,1) only in the constrained regime.
struct GeniePolicy {
  int n = 0;
  std::vector<double> mu;  // mu[m-1] = probability used with m active nodes
  Regime regime = Regime::kUnconstrained;
  double phi = 0.0;

  double mu_at(int m) const { return mu[static_cast<std::size_t>(m) - 1]; }
};

/// Throughput-optimal local policy: mu_high = min{1, lambda_H/P_tx,
/// 1/(n*pi_H)}. Requires lambda_low == 0.
LocalPolicy local_optimal(int n, const EhChain& chain);

/// Stationary throughput of the local scheme, n * q_bar * (1-q_bar)^(n-1),
/// where q_bar is the per-node long-run transmission probability.
double local_throughput(int n, double q_bar);

/// Expected successes in one slot given per-node transmission probabilities q
/// and `channels` orthogonal channels (collision model: a transmission
/// succeeds iff it is alone on its channel).
double instantaneous_throughput(std::span<const double> q, int channels);

/// Average transmission probability of a node conditioned on being in H,
/// under a genie policy at stationarity.
double genie_qbar(const GeniePolicy& policy, const EhChain& chain);

/// Stationary network throughput of a genie policy.
double genie_rbar(const GeniePolicy& policy, const EhChain& chain);

/// Harvesting level above which the H-state power constraint is slack:
/// P_tx/(n*pi_H) * (1 - pi_L^n).
double lambda_h_max(int n, const EhChain& chain);

/// Unique u in (0, 1/m] solving (1-u)^(m-2) (1-m*u) = phi, by bisection
/// (the left side is strictly decreasing on that interval). m >= 2,
/// phi in [0,1).
double solve_mu_given_phi(int m, double phi, double eps_mu = 1e-12);

struct PhiSolution {
  double phi = 0.0;
  std::vector<double> mu;  // mu[m-1], with mu[0] = 1 fixed
};

/// Outer bisection for the constrained regime: finds phi in (0,1) such that
/// the policy {mu(1)=1, mu(m)=solve_mu_given_phi(m, phi)} meets the power
/// budget min{1, lambda_H/P_tx} with equality (genie_qbar decreases strictly
/// in phi). Requires P_tx*pi_L^(n-1) < lambda_H < lambda_h_max.
PhiSolution solve_phi(int n, const EhChain& chain, double eps_phi = 1e-10,
                      double eps_mu = 1e-12);

/// Optimal genie-aided policy; dispatches the three regimes on lambda_H.
/// Requires lambda_low == 0 and lambda_high > 0 (the chain already enforces
/// the latter).
GeniePolicy genie_optimal(int n, const EhChain& chain, double eps_phi = 1e-10,
                          double eps_mu = 1e-12);

}  // namespace ehma

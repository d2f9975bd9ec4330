#pragma once

#include <span>
#include <vector>

#include "ehma/eh_chain.hpp"

namespace ehma {
namespace oracle {

/// Distribution over joint harvesting configurations of n nodes; index is a
/// bitmask with bit i set iff node i is in H. Test-support only: every
/// operation here enumerates the 2^n space directly from first principles.
struct JointDist {
  int n = 0;
  std::vector<double> probs;  // 2^n entries
};

/// Product-form stationary distribution: pi_H^|c| * pi_L^(n-|c|).
JointDist stationary_joint(int n, const EhChain& chain);

/// Marginal of a joint distribution over the active count (length n+1).
std::vector<double> marginal_counts(const JointDist& dist);

struct QbarRbar {
  double q_bar = 0.0;
  double r_bar = 0.0;
};

/// Exact stationary Q_bar_H and R_bar of a count-indexed policy mu
/// (mu[m-1] = probability with m actives), by enumerating all 2^n
/// configurations and, for the success probabilities, all transmit subsets.
/// n <= 12.
QbarRbar enumerate_qbar_rbar(int n, const EhChain& chain,
                             std::span<const double> mu);

/// Exact Bayes step on the joint space: condition on observing t
/// transmitters (each active transmits with probability mu), then apply the
/// per-node transition. Marginalizing the result over counts must reproduce
/// belief_update. n <= 10. Throws zero_evidence_error as belief_update does.
JointDist joint_filter_step(const JointDist& dist, const EhChain& chain,
                            double mu, int t);

struct GridSearchResult {
  std::vector<double> mu;  // mu[m-1]
  double r_bar = 0.0;
};

/// Exhaustive optimality witness over the grid {0, step, 2*step, ..., 1}^n
/// subject to Q_bar_H(mu) <= budget (+1e-12 slack). Budget-explicit core;
/// n <= 4, step >= 0.01.
GridSearchResult grid_search_genie_budget(int n, double pi_high, double budget,
                                          double step);

/// Wrapper taking the budget from the chain: min{1, lambda_H / P_tx}.
GridSearchResult grid_search_genie(int n, const EhChain& chain, double step);

}  // namespace oracle
}  // namespace ehma

#pragma once

#include <cstdint>
#include <vector>

#include "ehma/count_kernel.hpp"
#include "ehma/eh_chain.hpp"
#include "ehma/policy.hpp"

namespace ehma {

/// Posterior over the number of active (H-state) nodes, probs[m] = P(N_H = m)
/// for m = 0..n. Kept normalized after every update.
struct Belief {
  std::vector<double> probs;

  int max_count() const { return static_cast<int>(probs.size()) - 1; }
  void normalize();
};

/// Stationary prior: Binomial(n, pi_H).
Belief belief_init(int n, const EhChain& chain);

/// P(t transmitters observed | m active nodes, each transmitting with
/// probability mu): Binomial(m, mu) pmf at t, and 0 for t > m.
double obs_likelihood(int t, double mu, int m);

/// One filtering step: condition on the observed transmitter count t under
/// broadcast probability mu, then push through the count-transition kernel.
/// Throws zero_evidence_error when the observation has (numerically) zero
/// probability under `belief` (total evidence < 1e-300).
Belief belief_update(const Belief& belief, double mu, int t,
                     const CountKernel& kernel);

/// Allocation-free core of belief_update. Returns false instead of throwing
/// on zero evidence (dst is left unspecified in that case). src and dst must
/// be distinct.
bool belief_update_into(const Belief& src, double mu, int t,
                        const CountKernel& kernel, Belief& dst);

/// Power-matched broadcast probability: the mu that gives the same
/// belief-expected network power as the genie policy. Returns 0 when the
/// belief puts (numerically) all mass on m = 0.
double control_mu(const Belief& belief, const GeniePolicy& genie);

/// Belief-expected instantaneous throughput when every active node transmits
/// with probability mu.
double expected_throughput_belief(const Belief& belief, double mu);

/// Gateway-side controller: tracks the belief and issues the power-matched
/// broadcast probability each slot. select_mu() is called at the start of a
/// slot (before the slot's observation), observe() at the end with the
/// number of transmissions seen. Single-owner mutable; the update recursion
/// is sequential by construction.
class BayesController {
 public:
  BayesController(const EhChain& chain, GeniePolicy genie);

  double select_mu();
  void observe(int transmitters);
  void reset();

  const Belief& belief() const { return belief_; }
  const CountKernel& kernel() const { return kernel_; }
  const GeniePolicy& genie() const { return genie_; }
  double last_mu() const { return last_mu_; }
  std::uint64_t zero_evidence_resets() const { return zero_evidence_resets_; }

 private:
  CountKernel kernel_;
  GeniePolicy genie_;
  Belief prior_;
  Belief belief_;
  Belief scratch_;
  double last_mu_ = 0.0;
  std::uint64_t zero_evidence_resets_ = 0;
};

}  // namespace ehma

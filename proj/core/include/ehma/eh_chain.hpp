#pragma once

#include <cassert>
#include <cstdint>

namespace ehma {

enum class EhState : std::uint8_t { kLow = 0, kHigh = 1 };

/// Two-state Markov harvesting model. Each node is in a "low" (L) or "high"
/// (H) harvesting state; per slot, L->H with probability p_high and H->L with
/// probability p_low. lambda_high / lambda_low are the mean harvested powers
/// in each state and p_tx is the transmission power, all in the same units.
///
/// Parameters are validated once at construction; invalid combinations throw
/// std::invalid_argument. Instances are immutable.
struct EhChain {
  double p_high;       // L -> H transition probability per slot
  double p_low;        // H -> L transition probability per slot
  double lambda_high;  // mean harvested power in H
  double lambda_low;   // mean harvested power in L (solvers require 0)
  double p_tx;         // transmission power

  EhChain(double p_high_, double p_low_, double lambda_high_,
          double lambda_low_, double p_tx_);

  // Stationary probabilities of the two states. pi_low is computed as
  // 1 - pi_high so the pair sums to 1 exactly.
  double pi_high() const { return p_high / (p_high + p_low); }
  double pi_low() const { return 1.0 - pi_high(); }
};

struct SteadyState {
  double pi_high;
  double pi_low;
};

SteadyState steady_state(const EhChain& chain);

/// Advances one node's harvesting state given a uniform draw u in [0,1).
/// Deterministic: from L returns H iff u < p_high; from H returns L iff
/// u < p_low.
inline EhState sample_next_eh(EhState state, const EhChain& chain, double u) {
  assert(u >= 0.0 && u < 1.0);
  if (state == EhState::kLow) {
    return u < chain.p_high ? EhState::kHigh : EhState::kLow;
  }
  return u < chain.p_low ? EhState::kLow : EhState::kHigh;
}

}  // namespace ehma

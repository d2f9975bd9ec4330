#include "ehma/eh_chain.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ehma {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("EhChain: ") + what);
}

}  // namespace

EhChain::EhChain(double p_high_, double p_low_, double lambda_high_,
                 double lambda_low_, double p_tx_)
    : p_high(p_high_),
      p_low(p_low_),
      lambda_high(lambda_high_),
      lambda_low(lambda_low_),
      p_tx(p_tx_) {
  require(std::isfinite(p_high) && std::isfinite(p_low), "transition probabilities must be finite");
  require(p_high > 0.0, "p_high must be > 0");
  require(p_low > 0.0, "p_low must be > 0");
  require(p_high + p_low < 1.0, "p_high + p_low must be < 1 (positive memory)");
  require(std::isfinite(lambda_high) && std::isfinite(lambda_low) && std::isfinite(p_tx),
          "powers must be finite");
  require(lambda_low >= 0.0, "lambda_low must be >= 0");
  require(lambda_high > lambda_low, "lambda_high must exceed lambda_low");
  require(p_tx > 0.0, "p_tx must be > 0");
}

SteadyState steady_state(const EhChain& chain) {
  return {chain.pi_high(), chain.pi_low()};
}

}  // namespace ehma

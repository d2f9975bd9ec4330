#pragma once

#include <span>
#include <vector>

#include "ehma/eh_chain.hpp"

namespace ehma {

/// One-slot transition kernel of the active-node count process: entry
/// (from, to) is P(N_H,k+1 = to | N_H,k = from) for a network of n i.i.d.
/// two-state chains. Row-stochastic, (n+1) x (n+1), independent of the
/// transmission policy.
struct CountKernel {
  int n = 0;
  std::vector<double> probs;  // row-major, row = from-count

  double at(int from, int to) const {
    return probs[static_cast<std::size_t>(from) * (n + 1) + to];
  }
  std::span<const double> row(int from) const {
    return {probs.data() + static_cast<std::size_t>(from) * (n + 1),
            static_cast<std::size_t>(n) + 1};
  }
};

/// Builds the count kernel for n >= 1 nodes. Throws std::invalid_argument
/// for n < 1.
CountKernel count_kernel(int n, const EhChain& chain);

}  // namespace ehma

#include "ehma/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "ehma/binomial.hpp"
#include "ehma/errors.hpp"

namespace ehma {
namespace oracle {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

int popcount(unsigned mask) { return std::popcount(mask); }

// E[# of successful slots | m actives transmitting i.i.d. with prob mu],
// B = 1 collision model, by enumerating the 2^m transmit patterns.
double success_probability_enumerated(int m, double mu) {
  if (m == 0) return 0.0;
  double expected = 0.0;
  for (unsigned pattern = 0; pattern < (1u << m); ++pattern) {
    const int tx = popcount(pattern);
    if (tx != 1) continue;
    expected += std::pow(mu, tx) * std::pow(1.0 - mu, m - tx);
  }
  return expected;
}

// P(t transmitters | m actives, prob mu) by enumerating transmit subsets.
double transmit_count_probability_enumerated(int m, int t, double mu) {
  if (t > m) return 0.0;
  double p = 0.0;
  for (unsigned pattern = 0; pattern < (1u << m); ++pattern) {
    if (popcount(pattern) != t) continue;
    p += std::pow(mu, t) * std::pow(1.0 - mu, m - t);
  }
  return p;
}

}  // namespace

JointDist stationary_joint(int n, const EhChain& chain) {
  require(n >= 1 && n <= 20, "stationary_joint: n in [1, 20]");
  const double pi_h = chain.pi_high();
  const double pi_l = chain.pi_low();
  JointDist dist;
  dist.n = n;
  dist.probs.resize(std::size_t{1} << n);
  for (unsigned mask = 0; mask < dist.probs.size(); ++mask) {
    const int actives = popcount(mask);
    dist.probs[mask] = std::pow(pi_h, actives) * std::pow(pi_l, n - actives);
  }
  return dist;
}

std::vector<double> marginal_counts(const JointDist& dist) {
  std::vector<double> counts(static_cast<std::size_t>(dist.n) + 1, 0.0);
  for (unsigned mask = 0; mask < dist.probs.size(); ++mask) {
    counts[static_cast<std::size_t>(popcount(mask))] += dist.probs[mask];
  }
  return counts;
}

QbarRbar enumerate_qbar_rbar(int n, const EhChain& chain,
                             std::span<const double> mu) {
  require(n >= 1 && n <= 12, "enumerate_qbar_rbar: n in [1, 12]");
  require(static_cast<int>(mu.size()) == n,
          "enumerate_qbar_rbar: mu must have n entries");

  std::vector<double> success(static_cast<std::size_t>(n) + 1, 0.0);
  for (int m = 1; m <= n; ++m) {
    success[static_cast<std::size_t>(m)] =
        success_probability_enumerated(m, mu[static_cast<std::size_t>(m) - 1]);
  }

  const JointDist dist = stationary_joint(n, chain);
  double q_node1 = 0.0;  // E[q_1 ; node 1 active]
  double r = 0.0;
  for (unsigned mask = 0; mask < dist.probs.size(); ++mask) {
    const int actives = popcount(mask);
    const double w = dist.probs[mask];
    if (actives > 0) {
      r += w * success[static_cast<std::size_t>(actives)];
      if (mask & 1u) {
        q_node1 += w * mu[static_cast<std::size_t>(actives) - 1];
      }
    }
  }
  return {q_node1 / chain.pi_high(), r};
}

JointDist joint_filter_step(const JointDist& dist, const EhChain& chain,
                            double mu, int t) {
  require(dist.n >= 1 && dist.n <= 10, "joint_filter_step: n in [1, 10]");
  require(t >= 0 && t <= dist.n, "joint_filter_step: t in [0, n]");
  require(mu >= 0.0 && mu <= 1.0, "joint_filter_step: mu in [0,1]");

  const int n = dist.n;
  std::vector<double> likelihood_by_count(static_cast<std::size_t>(n) + 1);
  for (int m = 0; m <= n; ++m) {
    likelihood_by_count[static_cast<std::size_t>(m)] =
        transmit_count_probability_enumerated(m, t, mu);
  }

  JointDist out;
  out.n = n;
  out.probs.resize(dist.probs.size());

  double evidence = 0.0;
  for (unsigned mask = 0; mask < dist.probs.size(); ++mask) {
    const double w =
        dist.probs[mask] *
        likelihood_by_count[static_cast<std::size_t>(popcount(mask))];
    out.probs[mask] = w;
    evidence += w;
  }
  if (evidence < 1e-300) {
    throw zero_evidence_error(
        "joint_filter_step: observation has zero probability");
  }
  const double inv = 1.0 / evidence;
  for (double& p : out.probs) p *= inv;

  // Per-node transition, one node at a time (nodes move independently).
  std::vector<double> next(out.probs.size());
  for (int node = 0; node < n; ++node) {
    const unsigned bit = 1u << node;
    std::fill(next.begin(), next.end(), 0.0);
    for (unsigned mask = 0; mask < out.probs.size(); ++mask) {
      const double p = out.probs[mask];
      if (p == 0.0) continue;
      if (mask & bit) {
        next[mask & ~bit] += p * chain.p_low;
        next[mask] += p * (1.0 - chain.p_low);
      } else {
        next[mask | bit] += p * chain.p_high;
        next[mask] += p * (1.0 - chain.p_high);
      }
    }
    out.probs.swap(next);
  }
  return out;
}

GridSearchResult grid_search_genie_budget(int n, double pi_high, double budget,
                                          double step) {
  require(n >= 1 && n <= 4, "grid_search_genie: n in [1, 4]");
  require(step >= 0.01, "grid_search_genie: step must be >= 0.01");
  require(pi_high > 0.0 && pi_high < 1.0, "grid_search_genie: pi_high in (0,1)");
  require(budget >= 0.0, "grid_search_genie: budget must be >= 0");

  std::vector<double> grid;
  const int steps = static_cast<int>(std::floor(1.0 / step + 1e-9));
  for (int i = 0; i <= steps; ++i) grid.push_back(std::min(1.0, i * step));
  if (grid.back() < 1.0 - 1e-12) grid.push_back(1.0);
  const int g = static_cast<int>(grid.size());

  const double pi_low = 1.0 - pi_high;

  // Per-count contribution tables: q_tab[m-1][i] is the Q_bar_H term of
  // mu(m) = grid[i], r_tab likewise for R_bar.
  std::vector<std::vector<double>> q_tab(static_cast<std::size_t>(n));
  std::vector<std::vector<double>> r_tab(static_cast<std::size_t>(n));
  for (int m = 1; m <= n; ++m) {
    const double wq = binomial_coefficient(n - 1, m - 1) *
                      std::pow(pi_high, m - 1) * std::pow(pi_low, n - m);
    const double wr = binomial_coefficient(n, m) * std::pow(pi_high, m) *
                      std::pow(pi_low, n - m);
    auto& qt = q_tab[static_cast<std::size_t>(m) - 1];
    auto& rt = r_tab[static_cast<std::size_t>(m) - 1];
    qt.resize(static_cast<std::size_t>(g));
    rt.resize(static_cast<std::size_t>(g));
    for (int i = 0; i < g; ++i) {
      const double u = grid[static_cast<std::size_t>(i)];
      qt[static_cast<std::size_t>(i)] = wq * u;
      rt[static_cast<std::size_t>(i)] = wr * m * u * std::pow(1.0 - u, m - 1);
    }
  }

  const double slack = budget + 1e-12;
  GridSearchResult best;
  best.mu.assign(static_cast<std::size_t>(n), 0.0);
  best.r_bar = 0.0;  // mu == 0 is always feasible

  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  std::vector<double> q_prefix(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<double> r_prefix(static_cast<std::size_t>(n) + 1, 0.0);

  // Depth-first sweep with feasibility pruning: the grid is ascending and
  // every Q-term has a positive weight, so once the partial Q exceeds the
  // budget all later grid values at that level do too.
  int level = 0;
  while (level >= 0) {
    if (idx[static_cast<std::size_t>(level)] >= g) {
      idx[static_cast<std::size_t>(level)] = 0;
      --level;
      if (level >= 0) ++idx[static_cast<std::size_t>(level)];
      continue;
    }
    const int i = idx[static_cast<std::size_t>(level)];
    const double q = q_prefix[static_cast<std::size_t>(level)] +
                     q_tab[static_cast<std::size_t>(level)][static_cast<std::size_t>(i)];
    if (q > slack) {
      idx[static_cast<std::size_t>(level)] = 0;
      --level;
      if (level >= 0) ++idx[static_cast<std::size_t>(level)];
      continue;
    }
    const double r = r_prefix[static_cast<std::size_t>(level)] +
                     r_tab[static_cast<std::size_t>(level)][static_cast<std::size_t>(i)];
    if (level == n - 1) {
      if (r > best.r_bar) {
        best.r_bar = r;
        for (int m = 0; m < n; ++m) {
          best.mu[static_cast<std::size_t>(m)] =
              grid[static_cast<std::size_t>(idx[static_cast<std::size_t>(m)])];
        }
      }
      ++idx[static_cast<std::size_t>(level)];
    } else {
      q_prefix[static_cast<std::size_t>(level) + 1] = q;
      r_prefix[static_cast<std::size_t>(level) + 1] = r;
      ++level;
    }
  }
  return best;
}

GridSearchResult grid_search_genie(int n, const EhChain& chain, double step) {
  return grid_search_genie_budget(
      n, chain.pi_high(), std::min(1.0, chain.lambda_high / chain.p_tx), step);
}

}  // namespace oracle
}  // namespace ehma

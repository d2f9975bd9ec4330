#include "ehma/belief.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "ehma/binomial.hpp"
#include "ehma/errors.hpp"

namespace ehma {

namespace {

constexpr double kEvidenceFloor = 1e-300;

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

void Belief::normalize() {
  double sum = 0.0;
  for (double p : probs) sum += p;
  if (sum <= 0.0) return;
  const double inv = 1.0 / sum;
  for (double& p : probs) p *= inv;
}

Belief belief_init(int n, const EhChain& chain) {
  require(n >= 1, "belief_init: n must be >= 1");
  Belief b;
  b.probs.resize(static_cast<std::size_t>(n) + 1);
  const double pi_h = chain.pi_high();
  for (int m = 0; m <= n; ++m) {
    b.probs[static_cast<std::size_t>(m)] = binomial_pmf(m, n, pi_h);
  }
  return b;
}

double obs_likelihood(int t, double mu, int m) {
  require(t >= 0, "obs_likelihood: t must be >= 0");
  require(m >= 0, "obs_likelihood: m must be >= 0");
  require(mu >= 0.0 && mu <= 1.0, "obs_likelihood: mu in [0,1]");
  if (t > m) return 0.0;
  return binomial_pmf(t, m, mu);
}

bool belief_update_into(const Belief& src, double mu, int t,
                        const CountKernel& kernel, Belief& dst) {
  const int n = kernel.n;
  require(src.max_count() == n, "belief_update: belief/kernel size mismatch");
  require(t >= 0 && t <= n, "belief_update: t must lie in [0, n]");
  require(mu >= 0.0 && mu <= 1.0, "belief_update: mu in [0,1]");

  dst.probs.assign(static_cast<std::size_t>(n) + 1, 0.0);

  // Likelihood by recurrence over m: L(m+1)/L(m) = (m+1)/(m+1-t) * (1-mu).
  // L(t) = mu^t, with mu^0 = 1 even at mu = 0.
  double likelihood = (t == 0) ? 1.0 : std::pow(mu, t);
  double evidence = 0.0;
  for (int m = t; m <= n; ++m) {
    const double w = src.probs[static_cast<std::size_t>(m)] * likelihood;
    if (w > 0.0) {
      evidence += w;
      const std::span<const double> row = kernel.row(m);
      for (int to = 0; to <= n; ++to) {
        dst.probs[static_cast<std::size_t>(to)] += w * row[static_cast<std::size_t>(to)];
      }
    }
    likelihood *= (1.0 - mu) * (m + 1) / (m + 1 - t);
  }

  if (evidence < kEvidenceFloor) return false;
  dst.normalize();
  return true;
}

Belief belief_update(const Belief& belief, double mu, int t,
                     const CountKernel& kernel) {
  Belief out;
  if (!belief_update_into(belief, mu, t, kernel, out)) {
    throw zero_evidence_error(
        "belief_update: observation has zero probability under the belief");
  }
  return out;
}

double control_mu(const Belief& belief, const GeniePolicy& genie) {
  require(belief.max_count() == genie.n, "control_mu: belief/policy size mismatch");
  double num = 0.0;
  double den = 0.0;
  for (int m = 1; m <= genie.n; ++m) {
    const double bm = belief.probs[static_cast<std::size_t>(m)] * m;
    num += bm * genie.mu_at(m);
    den += bm;
  }
  if (den < kEvidenceFloor) return 0.0;
  return num / den;
}

double expected_throughput_belief(const Belief& belief, double mu) {
  require(mu >= 0.0 && mu <= 1.0, "expected_throughput_belief: mu in [0,1]");
  double r = 0.0;
  for (int m = 1; m <= belief.max_count(); ++m) {
    r += belief.probs[static_cast<std::size_t>(m)] * m * mu *
         std::pow(1.0 - mu, m - 1);
  }
  return r;
}

BayesController::BayesController(const EhChain& chain, GeniePolicy genie)
    : kernel_(count_kernel(genie.n, chain)),
      genie_(std::move(genie)),
      prior_(belief_init(kernel_.n, chain)),
      belief_(prior_),
      scratch_(prior_) {}

double BayesController::select_mu() {
  last_mu_ = control_mu(belief_, genie_);
  return last_mu_;
}

void BayesController::observe(int transmitters) {
  if (belief_update_into(belief_, last_mu_, transmitters, kernel_, scratch_)) {
    std::swap(belief_, scratch_);
    return;
  }
  // Zero evidence: floating-point starvation, or model mismatch under
  // battery dynamics. Reset to the stationary prior, then apply the
  // prediction step so the belief still refers to the next slot.
  ++zero_evidence_resets_;
  belief_ = prior_;
  if (belief_update_into(belief_, 0.0, 0, kernel_, scratch_)) {
    std::swap(belief_, scratch_);
  }
}

void BayesController::reset() {
  belief_ = prior_;
  last_mu_ = 0.0;
}

}  // namespace ehma

#include <benchmark/benchmark.h>

#include <random>

#include "ehma/belief.hpp"
#include "ehma/count_kernel.hpp"
#include "ehma/eh_chain.hpp"
#include "ehma/oracle.hpp"
#include "ehma/policy.hpp"
#include "ehma/simulator.hpp"

namespace {

using namespace ehma;

EhChain reference_chain(double lambda_high) {
  return EhChain(0.004, 0.020, lambda_high, 0.0, 1.0);
}

void BM_GenieOptimalConstrained(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const EhChain probe = reference_chain(0.15);
  const double thr = probe.p_tx * std::pow(probe.pi_low(), n - 1);
  const double lam_max = lambda_h_max(n, probe);
  const EhChain chain = reference_chain(0.5 * (thr + lam_max));
  for (auto _ : state) {
    benchmark::DoNotOptimize(genie_optimal(n, chain));
  }
}
BENCHMARK(BM_GenieOptimalConstrained)->Arg(20)->Arg(100)->Arg(500);

void BM_CountKernel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const EhChain chain = reference_chain(0.15);
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_kernel(n, chain));
  }
}
BENCHMARK(BM_CountKernel)->Arg(20)->Arg(64);

void BM_BeliefUpdate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const EhChain chain = reference_chain(0.15);
  const CountKernel kernel = count_kernel(n, chain);
  Belief belief = belief_init(n, chain);
  Belief scratch = belief;
  std::mt19937 gen(1);
  std::uniform_int_distribution<int> t_dist(0, 2);
  for (auto _ : state) {
    if (belief_update_into(belief, 0.05, t_dist(gen), kernel, scratch)) {
      std::swap(belief, scratch);
    }
  }
}
BENCHMARK(BM_BeliefUpdate)->Arg(20)->Arg(64);

void BM_SimulatorSlots(benchmark::State& state) {
  const Scheme scheme = static_cast<Scheme>(state.range(0));
  SimConfig cfg{.nodes = 20,
                .chain = reference_chain(0.15),
                .scheme = scheme,
                .mode = SimMode::kIdealized,
                .e_max_quanta = 0,
                .slots = 50'000,
                .burn_in = 0,
                .seed = 1,
                .replications = 1,
                .threads = 1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(run(cfg));
  }
  state.SetItemsProcessed(state.iterations() * cfg.slots);
}
BENCHMARK(BM_SimulatorSlots)
    ->Arg(static_cast<int>(Scheme::kLocal))
    ->Arg(static_cast<int>(Scheme::kGenie))
    ->Arg(static_cast<int>(Scheme::kBayesian));

void BM_EnumerateQbarRbar(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const EhChain chain = reference_chain(0.15);
  std::vector<double> mu(static_cast<std::size_t>(n));
  for (int m = 1; m <= n; ++m) mu[static_cast<std::size_t>(m) - 1] = 1.0 / m;
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle::enumerate_qbar_rbar(n, chain, mu));
  }
}
BENCHMARK(BM_EnumerateQbarRbar)->Arg(8)->Arg(12);

}  // namespace

BENCHMARK_MAIN();

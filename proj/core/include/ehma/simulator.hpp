#pragma once

#include <cstdint>
#include <string_view>

#include "ehma/eh_chain.hpp"

namespace ehma {

enum class Scheme { kLocal, kGenie, kBayesian };
enum class SimMode { kIdealized, kBattery };

std::string_view to_string(Scheme scheme);
std::string_view to_string(SimMode mode);

/// Monte Carlo configuration. Idealized mode enforces only the average power
/// constraint through the policy itself; battery mode adds quantized storage
/// (one quantum = P_tx * T) with Bernoulli(lambda_H/P_tx) harvesting, outage
/// and overflow.
struct SimConfig {
  int nodes = 20;
  EhChain chain;
  Scheme scheme = Scheme::kLocal;
  SimMode mode = SimMode::kIdealized;
  int e_max_quanta = 0;      // battery capacity (battery mode, >= 1)
  std::int64_t slots = 1'000'000;
  std::int64_t burn_in = -1;  // < 0: default 10/(p_high+p_low) slots
  std::uint64_t seed = 1;
  int replications = 20;
  int threads = 0;            // 0: hardware concurrency

  std::int64_t resolved_burn_in() const;
};

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;  // across replications
};

struct SimReport {
  Estimate throughput;   // successes per slot
  Estimate power_high;   // power per node-slot conditioned on the H state
  std::uint64_t outage_events = 0;     // intents suppressed on empty battery
  std::uint64_t overflow_quanta = 0;   // harvest lost at full battery
  std::uint64_t harvested_quanta = 0;  // all Bernoulli harvest successes
  std::uint64_t consumed_quanta = 0;   // one per actual transmission
  std::int64_t battery_delta_quanta = 0;  // sum of final - initial levels
  std::uint64_t zero_evidence_resets = 0;
  std::int64_t measured_slots = 0;  // per replication, after burn-in
  int replications = 0;
};

/// Runs the slot-by-slot simulation. Deterministic for a fixed (seed,
/// config) regardless of thread count. Counters cover the full run including
/// burn-in (so the quanta balance is exact); throughput and power_high are
/// measured after burn-in only.
SimReport run(const SimConfig& config);

/// True iff the measured H-state power satisfies the average power
/// constraint: power_high <= lambda_high + 3 * stderr.
bool measure_power_constraint(const SimReport& report, const EhChain& chain);

}  // namespace ehma

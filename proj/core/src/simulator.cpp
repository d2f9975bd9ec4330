#include "ehma/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "ehma/belief.hpp"
#include "ehma/policy.hpp"
#include "ehma/rng.hpp"

namespace ehma {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

struct RepTotals {
  std::int64_t successes = 0;
  std::uint64_t tx_measured = 0;
  std::uint64_t h_nodeslots_measured = 0;
  std::uint64_t outage = 0;
  std::uint64_t overflow = 0;
  std::uint64_t harvested = 0;
  std::uint64_t consumed = 0;
  std::int64_t battery_delta = 0;
  std::uint64_t zero_evidence = 0;
};

struct PolicyData {
  double local_mu_high = 0.0;
  GeniePolicy genie;  // genie and bayesian schemes
};

template <Scheme S, SimMode M>
RepTotals run_replication(const SimConfig& cfg, std::int64_t burn_in,
                          const PolicyData& policy, std::uint64_t rep) {
  const int n = cfg.nodes;
  const EhChain& chain = cfg.chain;
  const double pi_h = chain.pi_high();
  const double harvest_p = chain.lambda_high / chain.p_tx;

  SlotRng rng(cfg.seed, rep);
  std::vector<std::uint8_t> in_high(static_cast<std::size_t>(n));
  std::vector<int> battery;

  // Slot 0 keys the initial conditions; the dynamics use slots 1..slots.
  rng.begin_slot(0);
  for (int i = 0; i < n; ++i) {
    in_high[static_cast<std::size_t>(i)] =
        rng.uniform(static_cast<std::uint32_t>(i), Draw::kTransition) < pi_h;
  }

  const int initial_level = cfg.e_max_quanta / 2;
  if constexpr (M == SimMode::kBattery) {
    battery.assign(static_cast<std::size_t>(n), initial_level);
  }

  std::optional<BayesController> controller;
  if constexpr (S == Scheme::kBayesian) controller.emplace(chain, policy.genie);

  RepTotals totals;

  for (std::int64_t slot = 1; slot <= cfg.slots; ++slot) {
    rng.begin_slot(static_cast<std::uint64_t>(slot));
    const bool measured = slot > burn_in;

    int active = 0;
    if constexpr (S == Scheme::kGenie) {
      for (int i = 0; i < n; ++i) active += in_high[static_cast<std::size_t>(i)];
    }

    double mu = 0.0;
    if constexpr (S == Scheme::kLocal) {
      mu = policy.local_mu_high;
    } else if constexpr (S == Scheme::kGenie) {
      mu = active > 0 ? policy.genie.mu_at(active) : 0.0;
    } else {
      mu = controller->select_mu();
    }

    int transmissions = 0;
    int h_count = 0;
    for (int i = 0; i < n; ++i) {
      if (!in_high[static_cast<std::size_t>(i)]) continue;
      ++h_count;
      if (mu <= 0.0) continue;
      if (rng.uniform(static_cast<std::uint32_t>(i), Draw::kTransmit) >= mu) continue;
      if constexpr (M == SimMode::kBattery) {
        if (battery[static_cast<std::size_t>(i)] == 0) {
          ++totals.outage;
          continue;
        }
        --battery[static_cast<std::size_t>(i)];
      }
      ++transmissions;
    }
    totals.consumed += static_cast<std::uint64_t>(transmissions);

    if (measured) {
      totals.successes += transmissions == 1;
      totals.tx_measured += static_cast<std::uint64_t>(transmissions);
      totals.h_nodeslots_measured += static_cast<std::uint64_t>(h_count);
    }

    if constexpr (M == SimMode::kBattery) {
      for (int i = 0; i < n; ++i) {
        if (!in_high[static_cast<std::size_t>(i)]) continue;
        if (rng.uniform(static_cast<std::uint32_t>(i), Draw::kHarvest) < harvest_p) {
          ++totals.harvested;
          if (battery[static_cast<std::size_t>(i)] < cfg.e_max_quanta) {
            ++battery[static_cast<std::size_t>(i)];
          } else {
            ++totals.overflow;
          }
        }
      }
    }

    for (int i = 0; i < n; ++i) {
      const double u = rng.uniform(static_cast<std::uint32_t>(i), Draw::kTransition);
      const EhState s =
          in_high[static_cast<std::size_t>(i)] ? EhState::kHigh : EhState::kLow;
      in_high[static_cast<std::size_t>(i)] =
          sample_next_eh(s, chain, u) == EhState::kHigh;
    }

    if constexpr (S == Scheme::kBayesian) {
      controller->observe(transmissions);
    }
  }

  if constexpr (M == SimMode::kBattery) {
    for (int i = 0; i < n; ++i) {
      totals.battery_delta += battery[static_cast<std::size_t>(i)] - initial_level;
    }
  }
  if constexpr (S == Scheme::kBayesian) {
    totals.zero_evidence = controller->zero_evidence_resets();
  }
  return totals;
}

using RepFn = RepTotals (*)(const SimConfig&, std::int64_t, const PolicyData&,
                            std::uint64_t);

RepFn select_replication_fn(Scheme scheme, SimMode mode) {
  if (mode == SimMode::kIdealized) {
    switch (scheme) {
      case Scheme::kLocal: return &run_replication<Scheme::kLocal, SimMode::kIdealized>;
      case Scheme::kGenie: return &run_replication<Scheme::kGenie, SimMode::kIdealized>;
      case Scheme::kBayesian: return &run_replication<Scheme::kBayesian, SimMode::kIdealized>;
    }
  }
  switch (scheme) {
    case Scheme::kLocal: return &run_replication<Scheme::kLocal, SimMode::kBattery>;
    case Scheme::kGenie: return &run_replication<Scheme::kGenie, SimMode::kBattery>;
    case Scheme::kBayesian: return &run_replication<Scheme::kBayesian, SimMode::kBattery>;
  }
  throw std::logic_error("unreachable scheme/mode");
}

Estimate across_replications(const std::vector<double>& values) {
  Estimate e;
  const std::size_t r = values.size();
  for (double v : values) e.mean += v;
  e.mean /= static_cast<double>(r);
  if (r >= 2) {
    double ss = 0.0;
    for (double v : values) ss += (v - e.mean) * (v - e.mean);
    e.std_error = std::sqrt(ss / (static_cast<double>(r - 1) * static_cast<double>(r)));
  }
  return e;
}

}  // namespace

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::kLocal: return "local";
    case Scheme::kGenie: return "genie";
    case Scheme::kBayesian: return "bayesian";
  }
  return "unknown";
}

std::string_view to_string(SimMode mode) {
  switch (mode) {
    case SimMode::kIdealized: return "idealized";
    case SimMode::kBattery: return "battery";
  }
  return "unknown";
}

std::int64_t SimConfig::resolved_burn_in() const {
  if (burn_in >= 0) return burn_in;
  return static_cast<std::int64_t>(
      std::ceil(10.0 / (chain.p_high + chain.p_low)));
}

SimReport run(const SimConfig& config) {
  require(config.nodes >= 1, "run: nodes must be >= 1");
  require(config.slots >= 1, "run: slots must be >= 1");
  require(config.replications >= 1, "run: replications must be >= 1");
  const std::int64_t burn_in = config.resolved_burn_in();
  require(config.slots > burn_in, "run: slots must exceed burn_in");
  if (config.mode == SimMode::kBattery) {
    require(config.e_max_quanta >= 1, "run: battery mode needs e_max_quanta >= 1");
    require(config.chain.lambda_high <= config.chain.p_tx,
            "run: battery mode needs lambda_high/p_tx <= 1");
  }

  PolicyData policy;
  switch (config.scheme) {
    case Scheme::kLocal:
      policy.local_mu_high = local_optimal(config.nodes, config.chain).mu_high;
      break;
    case Scheme::kGenie:
    case Scheme::kBayesian:
      policy.genie = genie_optimal(config.nodes, config.chain);
      break;
  }

  const RepFn rep_fn = select_replication_fn(config.scheme, config.mode);
  const int reps = config.replications;
  std::vector<RepTotals> results(static_cast<std::size_t>(reps));

  int threads = config.threads > 0
                    ? config.threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, reps);

  if (threads == 1) {
    for (int r = 0; r < reps; ++r) {
      results[static_cast<std::size_t>(r)] =
          rep_fn(config, burn_in, policy, static_cast<std::uint64_t>(r));
    }
  } else {
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        try {
          for (;;) {
            const int r = next.fetch_add(1);
            if (r >= reps) return;
            results[static_cast<std::size_t>(r)] =
                rep_fn(config, burn_in, policy, static_cast<std::uint64_t>(r));
          }
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    if (failed.load()) std::rethrow_exception(failure);
  }

  const double measured_slots = static_cast<double>(config.slots - burn_in);
  std::vector<double> throughputs;
  std::vector<double> powers;
  throughputs.reserve(static_cast<std::size_t>(reps));
  powers.reserve(static_cast<std::size_t>(reps));

  SimReport report;
  for (const RepTotals& t : results) {  // fixed order: replication index
    throughputs.push_back(static_cast<double>(t.successes) / measured_slots);
    powers.push_back(t.h_nodeslots_measured == 0
                         ? 0.0
                         : config.chain.p_tx * static_cast<double>(t.tx_measured) /
                               static_cast<double>(t.h_nodeslots_measured));
    report.outage_events += t.outage;
    report.overflow_quanta += t.overflow;
    report.harvested_quanta += t.harvested;
    report.consumed_quanta += t.consumed;
    report.battery_delta_quanta += t.battery_delta;
    report.zero_evidence_resets += t.zero_evidence;
  }
  report.throughput = across_replications(throughputs);
  report.power_high = across_replications(powers);
  report.measured_slots = config.slots - burn_in;
  report.replications = reps;
  return report;
}

bool measure_power_constraint(const SimReport& report, const EhChain& chain) {
  return report.power_high.mean <=
         chain.lambda_high + 3.0 * report.power_high.std_error;
}

}  // namespace ehma

#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "ehma/eh_chain.hpp"
#include "ehma/simulator.hpp"
#include "json.hpp"

namespace ehma::cli {

/// Everything a command needs, after merging defaults, the optional JSON
/// config file and explicit flags (flags win over file, file over defaults).
/// Defaults mirror the reference experiment: N = 20, p_H = 4e-3, p_L = 2e-2,
/// P_tx = 1, lambda_L = 0.
struct ExperimentSpec {
  std::string command;

  int nodes = 20;
  double p_high = 4e-3;
  double p_low = 20e-3;
  double lambda_high = std::numeric_limits<double>::quiet_NaN();  // NaN: unset
  double lambda_low = 0.0;
  double p_tx = 1.0;

  std::string scheme = "local";      // local | genie | bayesian
  std::string mode = "idealized";    // idealized | battery
  int e_max_quanta = 10;             // simulate, battery mode
  std::string e_max_list = "1,2,5,10,20,50,100";  // sweep-battery capacities

  std::int64_t slots = 1'000'000;
  std::int64_t burn_in = -1;  // < 0: simulator default
  int replications = 20;
  std::uint64_t seed = 1;
  int grid_points = 20;
  int threads = 0;

  std::string output;          // empty: stdout
  std::string format = "csv";  // csv | json
};

Scheme parse_scheme(const std::string& name);
SimMode parse_mode(const std::string& name);

/// Comma-separated positive integers ("1,2,5"); throws on anything else.
std::vector<int> parse_int_list(const std::string& text);

/// Applies the keys present in a JSON config object onto `spec`. Unknown keys
/// and wrong types throw std::invalid_argument.
void apply_json_config(ExperimentSpec& spec, const nlohmann::json& config);

/// Chain from the spec's parameters; parameter errors surface as
/// std::invalid_argument (exit code 2 at the CLI).
EhChain chain_from_spec(const ExperimentSpec& spec);

/// Simulator config with the spec's scheme/mode; scheme and mode can be
/// overridden for sweep commands that run several of them.
SimConfig sim_config_from_spec(const ExperimentSpec& spec, Scheme scheme,
                               SimMode mode);

}  // namespace ehma::cli

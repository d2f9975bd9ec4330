#include "experiment_spec.hpp"

#include <cmath>
#include <stdexcept>

namespace ehma::cli {

namespace {

void fail(const std::string& what) { throw std::invalid_argument(what); }

}  // namespace

Scheme parse_scheme(const std::string& name) {
  if (name == "local") return Scheme::kLocal;
  if (name == "genie") return Scheme::kGenie;
  if (name == "bayesian") return Scheme::kBayesian;
  fail("unknown scheme '" + name + "' (expected local|genie|bayesian)");
  return Scheme::kLocal;
}

SimMode parse_mode(const std::string& name) {
  if (name == "idealized") return SimMode::kIdealized;
  if (name == "battery") return SimMode::kBattery;
  fail("unknown mode '" + name + "' (expected idealized|battery)");
  return SimMode::kIdealized;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> values;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string token = text.substr(pos, comma - pos);
    if (token.empty()) fail("empty entry in integer list '" + text + "'");
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(token, &used);
    } catch (const std::exception&) {
      fail("bad integer '" + token + "' in list");
    }
    if (used != token.size() || value <= 0) {
      fail("bad integer '" + token + "' in list (must be positive)");
    }
    values.push_back(value);
    pos = comma + 1;
  }
  if (values.empty()) fail("integer list is empty");
  return values;
}

void apply_json_config(ExperimentSpec& spec, const nlohmann::json& config) {
  if (!config.is_object()) fail("config file must hold a JSON object");
  for (const auto& [key, value] : config.items()) {
    try {
      if (key == "nodes") {
        spec.nodes = value.get<int>();
      } else if (key == "p_high") {
        spec.p_high = value.get<double>();
      } else if (key == "p_low") {
        spec.p_low = value.get<double>();
      } else if (key == "lambda_high") {
        spec.lambda_high = value.get<double>();
      } else if (key == "lambda_low") {
        spec.lambda_low = value.get<double>();
      } else if (key == "ptx") {
        spec.p_tx = value.get<double>();
      } else if (key == "scheme") {
        spec.scheme = value.get<std::string>();
      } else if (key == "mode") {
        spec.mode = value.get<std::string>();
      } else if (key == "emax") {
        if (value.is_string()) {
          spec.e_max_list = value.get<std::string>();
        } else if (value.is_array()) {
          std::string joined;
          for (const auto& item : value) {
            if (!joined.empty()) joined += ',';
            joined += std::to_string(item.get<int>());
          }
          spec.e_max_list = joined;
          spec.e_max_quanta = value.front().get<int>();
        } else {
          spec.e_max_quanta = value.get<int>();
          spec.e_max_list = std::to_string(spec.e_max_quanta);
        }
      } else if (key == "slots") {
        spec.slots = value.get<std::int64_t>();
      } else if (key == "burn_in") {
        spec.burn_in = value.get<std::int64_t>();
      } else if (key == "replications") {
        spec.replications = value.get<int>();
      } else if (key == "seed") {
        spec.seed = value.get<std::uint64_t>();
      } else if (key == "grid_points") {
        spec.grid_points = value.get<int>();
      } else if (key == "threads") {
        spec.threads = value.get<int>();
      } else if (key == "output") {
        spec.output = value.get<std::string>();
      } else if (key == "format") {
        spec.format = value.get<std::string>();
      } else {
        fail("unknown config key '" + key + "'");
      }
    } catch (const nlohmann::json::exception&) {
      fail("bad value type for config key '" + key + "'");
    }
  }
}

EhChain chain_from_spec(const ExperimentSpec& spec) {
  if (std::isnan(spec.lambda_high)) {
    fail("lambda_high is required (set --lambda-high or a config file)");
  }
  return EhChain(spec.p_high, spec.p_low, spec.lambda_high, spec.lambda_low,
                 spec.p_tx);
}

SimConfig sim_config_from_spec(const ExperimentSpec& spec, Scheme scheme,
                               SimMode mode) {
  SimConfig cfg{.nodes = spec.nodes,
                .chain = chain_from_spec(spec),
                .scheme = scheme,
                .mode = mode,
                .e_max_quanta = spec.e_max_quanta,
                .slots = spec.slots,
                .burn_in = spec.burn_in,
                .seed = spec.seed,
                .replications = spec.replications,
                .threads = spec.threads};
  return cfg;
}

}  // namespace ehma::cli

#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "ehma/errors.hpp"
#include "ehma/version.hpp"
#include "experiment_spec.hpp"
#include "json.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitSolver = 3;

struct CommonOptions {
  CLI::App* sub = nullptr;
  std::string config_path;
};

CommonOptions add_common_options(CLI::App& app, const std::string& name,
                                 const std::string& description,
                                 ehma::cli::ExperimentSpec& spec) {
  CLI::App* sub = app.add_subcommand(name, description);
  sub->add_option("--nodes", spec.nodes, "Number of nodes N");
  sub->add_option("--p-high", spec.p_high, "L->H transition probability per slot");
  sub->add_option("--p-low", spec.p_low, "H->L transition probability per slot");
  sub->add_option("--lambda-high", spec.lambda_high,
                  "Mean harvested power in the H state");
  sub->add_option("--lambda-low", spec.lambda_low,
                  "Mean harvested power in the L state (must stay 0)");
  sub->add_option("--ptx", spec.p_tx, "Transmission power");
  sub->add_option("--scheme", spec.scheme, "local|genie|bayesian");
  sub->add_option("--mode", spec.mode, "idealized|battery");
  if (name == "sweep-battery") {
    sub->add_option("--emax", spec.e_max_list,
                    "Comma-separated battery capacities in quanta");
  } else {
    sub->add_option("--emax", spec.e_max_quanta,
                    "Battery capacity in quanta (battery mode)");
  }
  sub->add_option("--slots", spec.slots, "Slots per replication");
  sub->add_option("--burn-in", spec.burn_in,
                  "Discarded warm-up slots (-1: 10/(p_high+p_low))");
  sub->add_option("--replications", spec.replications, "Independent replications");
  sub->add_option("--seed", spec.seed, "Base RNG seed");
  sub->add_option("--grid-points", spec.grid_points, "Sweep grid size");
  sub->add_option("--threads", spec.threads, "Worker threads (0: all cores)");
  sub->add_option("--output", spec.output, "Output file (default: stdout)");
  sub->add_option("--format", spec.format, "csv|json");
  CommonOptions common;
  common.sub = sub;
  sub->add_option("--config", common.config_path,
                  "JSON config file (flags override file values)");
  return common;
}

// Flags > config file > defaults: reload the file onto a default spec, then
// re-apply every flag the user actually passed.
void merge_config_file(const CommonOptions& common,
                       ehma::cli::ExperimentSpec& spec) {
  if (common.config_path.empty()) return;
  std::ifstream in(common.config_path);
  if (!in) {
    throw std::invalid_argument("cannot open config file '" +
                                common.config_path + "'");
  }
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("bad JSON in config file: " +
                                std::string(e.what()));
  }

  ehma::cli::ExperimentSpec merged;
  merged.command = spec.command;
  ehma::cli::apply_json_config(merged, doc);

  const CLI::App* sub = common.sub;
  if (sub->count("--nodes")) merged.nodes = spec.nodes;
  if (sub->count("--p-high")) merged.p_high = spec.p_high;
  if (sub->count("--p-low")) merged.p_low = spec.p_low;
  if (sub->count("--lambda-high")) merged.lambda_high = spec.lambda_high;
  if (sub->count("--lambda-low")) merged.lambda_low = spec.lambda_low;
  if (sub->count("--ptx")) merged.p_tx = spec.p_tx;
  if (sub->count("--scheme")) merged.scheme = spec.scheme;
  if (sub->count("--mode")) merged.mode = spec.mode;
  if (sub->count("--emax")) {
    merged.e_max_quanta = spec.e_max_quanta;
    merged.e_max_list = spec.e_max_list;
  }
  if (sub->count("--slots")) merged.slots = spec.slots;
  if (sub->count("--burn-in")) merged.burn_in = spec.burn_in;
  if (sub->count("--replications")) merged.replications = spec.replications;
  if (sub->count("--seed")) merged.seed = spec.seed;
  if (sub->count("--grid-points")) merged.grid_points = spec.grid_points;
  if (sub->count("--threads")) merged.threads = spec.threads;
  if (sub->count("--output")) merged.output = spec.output;
  if (sub->count("--format")) merged.format = spec.format;
  spec = merged;
}

int dispatch(const ehma::cli::ExperimentSpec& spec) {
  std::ostringstream buffer;
  ehma::cli::run_command(spec, buffer);

  if (spec.output.empty()) {
    std::cout << buffer.str();
    return kExitOk;
  }
  std::ofstream out(spec.output, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::invalid_argument("cannot open output file '" + spec.output + "'");
  }
  out << buffer.str();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transmission policies and Monte Carlo simulation for slotted "
               "random access by energy-harvesting nodes"};
  app.set_version_flag("--version", std::string("ehma ") + ehma::kVersion);
  app.require_subcommand(1);

  ehma::cli::ExperimentSpec spec;
  const CommonOptions solve = add_common_options(
      app, "solve", "Print the optimal local and genie-aided policies", spec);
  const CommonOptions sweep_lambda = add_common_options(
      app, "sweep-lambda",
      "Throughput vs harvested power: analytic curves plus Monte Carlo", spec);
  const CommonOptions sweep_battery = add_common_options(
      app, "sweep-battery",
      "Throughput vs battery capacity under quantized battery dynamics", spec);
  const CommonOptions simulate = add_common_options(
      app, "simulate", "One Monte Carlo run with a full report", spec);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    for (const CommonOptions* common :
         {&solve, &sweep_lambda, &sweep_battery, &simulate}) {
      if (common->sub->parsed()) {
        spec.command = common->sub->get_name();
        merge_config_file(*common, spec);
      }
    }
    return dispatch(spec);
  } catch (const ehma::solver_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const ehma::zero_evidence_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

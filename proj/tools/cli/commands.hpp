#pragma once

#include <ostream>

#include "experiment_spec.hpp"

namespace ehma::cli {

void cmd_solve(const ExperimentSpec& spec, std::ostream& out);
void cmd_sweep_lambda(const ExperimentSpec& spec, std::ostream& out);
void cmd_sweep_battery(const ExperimentSpec& spec, std::ostream& out);
void cmd_simulate(const ExperimentSpec& spec, std::ostream& out);

/// Dispatches on spec.command; throws std::invalid_argument for an unknown
/// command. All command errors surface as exceptions (std::invalid_argument
/// for parameter/usage problems, ehma::solver_error for numerical failures).
void run_command(const ExperimentSpec& spec, std::ostream& out);

}  // namespace ehma::cli

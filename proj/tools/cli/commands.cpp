#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ehma/policy.hpp"
#include "ehma/simulator.hpp"
#include "report_io.hpp"

namespace ehma::cli {

namespace {

void fail(const std::string& what) { throw std::invalid_argument(what); }

bool json_requested(const ExperimentSpec& spec) {
  if (spec.format == "json") return true;
  if (spec.format == "csv") return false;
  fail("unknown format '" + spec.format + "' (expected csv|json)");
  return false;
}

void validate_run_counts(const ExperimentSpec& spec) {
  if (spec.slots < 1) fail("slots must be >= 1");
  if (spec.replications < 1) fail("replications must be >= 1");
}

// Base chain for sweeps: lambda_h_max and the regime thresholds only depend
// on (n, p_high, p_low, p_tx), so any valid placeholder lambda works.
EhChain sweep_base_chain(const ExperimentSpec& spec) {
  if (spec.lambda_low != 0.0) fail("policy solvers assume lambda_low == 0");
  return EhChain(spec.p_high, spec.p_low, spec.p_tx, 0.0, spec.p_tx);
}

ExperimentSpec with_lambda(const ExperimentSpec& spec, double lambda_high) {
  ExperimentSpec copy = spec;
  copy.lambda_high = lambda_high;
  return copy;
}

void write_table(const ExperimentSpec& spec, const ReportTable& table,
                 std::ostream& out) {
  if (json_requested(spec)) {
    table.write_json(out, metadata(spec));
  } else {
    table.write_csv(out, metadata(spec));
  }
}

}  // namespace

void cmd_solve(const ExperimentSpec& spec, std::ostream& out) {
  const EhChain chain = chain_from_spec(spec);
  const int n = spec.nodes;

  const double pi_h = chain.pi_high();
  const double lam_max = lambda_h_max(n, chain);
  const double single_threshold = chain.p_tx * std::pow(chain.pi_low(), n - 1);

  const LocalPolicy local = local_optimal(n, chain);
  const double local_q_bar = pi_h * local.mu_high;
  const double local_r = local_throughput(n, local_q_bar);

  const GeniePolicy genie = genie_optimal(n, chain);
  const double genie_q = genie_qbar(genie, chain);
  const double genie_r = genie_rbar(genie, chain);

  if (json_requested(spec)) {
    nlohmann::ordered_json doc;
    nlohmann::ordered_json meta_obj;
    for (const auto& [key, value] : metadata(spec)) meta_obj[key] = value;
    doc["meta"] = std::move(meta_obj);
    doc["pi_high"] = pi_h;
    doc["pi_low"] = chain.pi_low();
    doc["lambda_h_max"] = lam_max;
    doc["single_active_threshold"] = single_threshold;
    doc["local"] = {{"mu_high", local.mu_high},
                    {"mu_low", local.mu_low},
                    {"q_bar", local_q_bar},
                    {"throughput", local_r}};
    nlohmann::ordered_json genie_obj;
    genie_obj["regime"] = std::string(to_string(genie.regime));
    genie_obj["phi"] = genie.phi;
    genie_obj["q_bar_high"] = genie_q;
    genie_obj["throughput"] = genie_r;
    genie_obj["mu"] = genie.mu;
    doc["genie"] = std::move(genie_obj);
    out << doc.dump(2) << "\n";
    return;
  }

  for (const auto& [key, value] : metadata(spec)) {
    out << "# " << key << ": " << value << "\n";
  }
  out << "pi_high: " << format_double(pi_h) << "\n";
  out << "pi_low: " << format_double(chain.pi_low()) << "\n";
  out << "lambda_h_max: " << format_double(lam_max) << "\n";
  out << "single_active_threshold: " << format_double(single_threshold) << "\n";
  out << "local_mu_high: " << format_double(local.mu_high) << "\n";
  out << "local_q_bar: " << format_double(local_q_bar) << "\n";
  out << "local_throughput: " << format_double(local_r) << "\n";
  out << "genie_regime: " << to_string(genie.regime) << "\n";
  out << "genie_phi: " << format_double(genie.phi) << "\n";
  out << "genie_q_bar_high: " << format_double(genie_q) << "\n";
  out << "genie_throughput: " << format_double(genie_r) << "\n";
  out << "genie_mu:";
  for (int m = 1; m <= n; ++m) out << " " << format_double(genie.mu_at(m));
  out << "\n";
}

void cmd_sweep_lambda(const ExperimentSpec& spec, std::ostream& out) {
  if (spec.grid_points < 1) fail("grid_points must be >= 1");
  validate_run_counts(spec);

  const EhChain base = sweep_base_chain(spec);
  const int n = spec.nodes;
  const double pi_h = base.pi_high();
  const double lam_max = lambda_h_max(n, base);

  ReportTable table({"lambda_H", "pi_H_lambda_H", "R_local_analytic",
                     "R_genie_analytic", "R_local_mc", "R_local_mc_stderr",
                     "R_genie_mc", "R_genie_mc_stderr", "R_bayes_mc",
                     "R_bayes_mc_stderr", "power_H_local", "power_H_local_stderr",
                     "power_H_genie", "power_H_genie_stderr", "power_H_bayes",
                     "power_H_bayes_stderr"});

  for (int i = 1; i <= spec.grid_points; ++i) {
    const double lambda = lam_max * (static_cast<double>(i) / spec.grid_points);
    const ExperimentSpec point = with_lambda(spec, lambda);
    const EhChain chain = chain_from_spec(point);

    const LocalPolicy local = local_optimal(n, chain);
    const double r_local = local_throughput(n, pi_h * local.mu_high);
    const double r_genie = genie_rbar(genie_optimal(n, chain), chain);

    const SimReport mc_local =
        run(sim_config_from_spec(point, Scheme::kLocal, SimMode::kIdealized));
    const SimReport mc_genie =
        run(sim_config_from_spec(point, Scheme::kGenie, SimMode::kIdealized));
    const SimReport mc_bayes =
        run(sim_config_from_spec(point, Scheme::kBayesian, SimMode::kIdealized));

    table.add_row({cell(lambda), cell(pi_h * lambda), cell(r_local),
                   cell(r_genie), cell(mc_local.throughput.mean),
                   cell(mc_local.throughput.std_error),
                   cell(mc_genie.throughput.mean),
                   cell(mc_genie.throughput.std_error),
                   cell(mc_bayes.throughput.mean),
                   cell(mc_bayes.throughput.std_error),
                   cell(mc_local.power_high.mean),
                   cell(mc_local.power_high.std_error),
                   cell(mc_genie.power_high.mean),
                   cell(mc_genie.power_high.std_error),
                   cell(mc_bayes.power_high.mean),
                   cell(mc_bayes.power_high.std_error)});
  }
  write_table(spec, table, out);
}

void cmd_sweep_battery(const ExperimentSpec& spec, std::ostream& out) {
  validate_run_counts(spec);
  const std::vector<int> capacities = parse_int_list(spec.e_max_list);

  const EhChain base = sweep_base_chain(spec);
  const double lambda = std::isnan(spec.lambda_high)
                            ? lambda_h_max(spec.nodes, base)
                            : spec.lambda_high;
  const ExperimentSpec point = with_lambda(spec, lambda);
  if (lambda > spec.p_tx) {
    fail("sweep-battery needs lambda_high/ptx <= 1 (quantum model)");
  }

  const SimReport local_ideal =
      run(sim_config_from_spec(point, Scheme::kLocal, SimMode::kIdealized));
  const SimReport bayes_ideal =
      run(sim_config_from_spec(point, Scheme::kBayesian, SimMode::kIdealized));

  const double node_slots = static_cast<double>(point.slots) * point.nodes *
                            point.replications;

  ReportTable table(
      {"e_max_quanta", "R_local_battery", "R_local_battery_stderr",
       "R_local_ideal", "R_local_ideal_stderr", "R_bayes_battery",
       "R_bayes_battery_stderr", "R_bayes_ideal", "R_bayes_ideal_stderr",
       "outage_rate_local", "overflow_rate_local", "outage_rate_bayes",
       "overflow_rate_bayes", "zero_evidence_resets_bayes"});

  for (int e_max : capacities) {
    ExperimentSpec battery_point = point;
    battery_point.e_max_quanta = e_max;
    const SimReport local_bat = run(
        sim_config_from_spec(battery_point, Scheme::kLocal, SimMode::kBattery));
    const SimReport bayes_bat = run(sim_config_from_spec(
        battery_point, Scheme::kBayesian, SimMode::kBattery));

    table.add_row({cell(e_max), cell(local_bat.throughput.mean),
                   cell(local_bat.throughput.std_error),
                   cell(local_ideal.throughput.mean),
                   cell(local_ideal.throughput.std_error),
                   cell(bayes_bat.throughput.mean),
                   cell(bayes_bat.throughput.std_error),
                   cell(bayes_ideal.throughput.mean),
                   cell(bayes_ideal.throughput.std_error),
                   cell(static_cast<double>(local_bat.outage_events) / node_slots),
                   cell(static_cast<double>(local_bat.overflow_quanta) / node_slots),
                   cell(static_cast<double>(bayes_bat.outage_events) / node_slots),
                   cell(static_cast<double>(bayes_bat.overflow_quanta) / node_slots),
                   cell(bayes_bat.zero_evidence_resets)});
  }
  write_table(point, table, out);  // metadata carries the resolved lambda
}

void cmd_simulate(const ExperimentSpec& spec, std::ostream& out) {
  validate_run_counts(spec);
  const Scheme scheme = parse_scheme(spec.scheme);
  const SimMode mode = parse_mode(spec.mode);
  const SimReport report = run(sim_config_from_spec(spec, scheme, mode));

  ReportTable table({"scheme", "mode", "nodes", "lambda_H", "slots", "burn_in",
                     "replications", "seed", "throughput", "throughput_stderr",
                     "power_H", "power_H_stderr", "outage_events",
                     "overflow_quanta", "harvested_quanta", "consumed_quanta",
                     "zero_evidence_resets", "measured_slots"});
  table.add_row({spec.scheme, spec.mode, cell(spec.nodes),
                 cell(spec.lambda_high), cell(spec.slots), cell(spec.burn_in),
                 cell(spec.replications), std::to_string(spec.seed),
                 cell(report.throughput.mean), cell(report.throughput.std_error),
                 cell(report.power_high.mean), cell(report.power_high.std_error),
                 cell(report.outage_events), cell(report.overflow_quanta),
                 cell(report.harvested_quanta), cell(report.consumed_quanta),
                 cell(report.zero_evidence_resets), cell(report.measured_slots)});
  write_table(spec, table, out);
}

void run_command(const ExperimentSpec& spec, std::ostream& out) {
  if (spec.command == "solve") {
    cmd_solve(spec, out);
  } else if (spec.command == "sweep-lambda") {
    cmd_sweep_lambda(spec, out);
  } else if (spec.command == "sweep-battery") {
    cmd_sweep_battery(spec, out);
  } else if (spec.command == "simulate") {
    cmd_simulate(spec, out);
  } else {
    fail("unknown command '" + spec.command + "'");
  }
}

}  // namespace ehma::cli

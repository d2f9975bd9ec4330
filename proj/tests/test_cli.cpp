#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "commands.hpp"
#include "doctest.h"
#include "ehma/policy.hpp"
#include "experiment_spec.hpp"
#include "json.hpp"
#include "report_io.hpp"

using namespace ehma;
using namespace ehma::cli;

namespace {

ExperimentSpec quick_spec(const std::string& command) {
  ExperimentSpec spec;
  spec.command = command;
  spec.lambda_high = 0.15;
  spec.slots = 5'000;
  spec.burn_in = 500;
  spec.replications = 2;
  spec.grid_points = 2;
  spec.threads = 2;
  return spec;
}

int count_lines(const std::string& text, char prefix) {
  int count = 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) count += !line.empty() && line[0] == prefix;
  return count;
}

}  // namespace

TEST_CASE("double formatting is 12 significant digits, locale-free") {
  CHECK(format_double(0.3) == "0.3");
  CHECK(format_double(1.0 / 3.0) == "0.333333333333");
  CHECK(format_double(0.2921747840086234) == "0.292174784009");
  CHECK(format_double(1234567.0) == "1234567");
  CHECK(format_double(1e-300) == "1e-300");
  CHECK(format_double(0.0) == "0");
}

TEST_CASE("scheme and mode parsing") {
  CHECK(parse_scheme("local") == Scheme::kLocal);
  CHECK(parse_scheme("genie") == Scheme::kGenie);
  CHECK(parse_scheme("bayesian") == Scheme::kBayesian);
  CHECK_THROWS_AS(parse_scheme("oracle"), std::invalid_argument);
  CHECK(parse_mode("idealized") == SimMode::kIdealized);
  CHECK(parse_mode("battery") == SimMode::kBattery);
  CHECK_THROWS_AS(parse_mode("ideal"), std::invalid_argument);
}

TEST_CASE("integer list parsing") {
  CHECK(parse_int_list("1,2,5,10") == std::vector<int>{1, 2, 5, 10});
  CHECK(parse_int_list("7") == std::vector<int>{7});
  CHECK_THROWS_AS(parse_int_list(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_int_list("1,,2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_int_list("1,-2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_int_list("1,2x"), std::invalid_argument);
}

TEST_CASE("json config application") {
  ExperimentSpec spec;
  apply_json_config(spec, nlohmann::json::parse(R"({
    "nodes": 10, "p_high": 0.01, "lambda_high": 0.2,
    "scheme": "genie", "emax": [1, 5], "seed": 42
  })"));
  CHECK(spec.nodes == 10);
  CHECK(spec.p_high == 0.01);
  CHECK(spec.lambda_high == 0.2);
  CHECK(spec.scheme == "genie");
  CHECK(spec.e_max_list == "1,5");
  CHECK(spec.e_max_quanta == 1);
  CHECK(spec.seed == 42);
  CHECK(spec.p_low == 20e-3);  // untouched default

  CHECK_THROWS_AS(apply_json_config(spec, nlohmann::json::parse(R"({"n": 3})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      apply_json_config(spec, nlohmann::json::parse(R"({"nodes": "x"})")),
      std::invalid_argument);
  CHECK_THROWS_AS(apply_json_config(spec, nlohmann::json::parse("[1,2]")),
                  std::invalid_argument);
}

TEST_CASE("spec validation errors") {
  ExperimentSpec spec = quick_spec("solve");
  spec.lambda_high = std::nan("");
  CHECK_THROWS_AS(chain_from_spec(spec), std::invalid_argument);

  spec = quick_spec("solve");
  spec.p_high = 0.6;
  spec.p_low = 0.5;
  CHECK_THROWS_AS(chain_from_spec(spec), std::invalid_argument);

  spec = quick_spec("sweep-lambda");
  spec.grid_points = 0;
  std::ostringstream out;
  CHECK_THROWS_AS(run_command(spec, out), std::invalid_argument);

  spec = quick_spec("sweep-lambda");
  spec.slots = 0;
  CHECK_THROWS_AS(run_command(spec, out), std::invalid_argument);

  spec = quick_spec("nonsense");
  CHECK_THROWS_AS(run_command(spec, out), std::invalid_argument);
}

TEST_CASE("solve output carries the policy and thresholds") {
  ExperimentSpec spec = quick_spec("solve");
  std::ostringstream out;
  run_command(spec, out);
  const std::string text = out.str();
  CHECK(text.find("genie_regime: constrained") != std::string::npos);
  CHECK(text.find("lambda_h_max: 0.292174784009") != std::string::npos);
  CHECK(text.find("local_mu_high: 0.15") != std::string::npos);
  CHECK(text.find("# seed: 1") != std::string::npos);

  spec.format = "json";
  std::ostringstream jout;
  run_command(spec, jout);
  const auto doc = nlohmann::json::parse(jout.str());
  CHECK(doc["genie"]["regime"] == "constrained");
  CHECK(doc["genie"]["mu"].size() == 20);
  CHECK(std::abs(doc["genie"]["q_bar_high"].get<double>() - 0.15) <= 1e-8);
  CHECK(doc["meta"]["command"] == "solve");
}

TEST_CASE("solve reports the unconstrained regime at lambda = 0.3") {
  ExperimentSpec spec = quick_spec("solve");
  spec.lambda_high = 0.3;  // above lambda_h_max ~ 0.2922
  spec.format = "json";
  std::ostringstream out;
  run_command(spec, out);
  const auto doc = nlohmann::json::parse(out.str());
  CHECK(doc["genie"]["regime"] == "unconstrained");
  for (int m = 1; m <= 20; ++m) {
    CHECK(doc["genie"]["mu"][static_cast<std::size_t>(m) - 1].get<double>() ==
          1.0 / m);
  }
}

TEST_CASE("solve honors the single-active closed form") {
  ExperimentSpec spec = quick_spec("solve");
  spec.nodes = 2;
  spec.p_high = 0.1;
  spec.p_low = 0.1;  // pi_L = 0.5
  spec.lambda_high = 0.4;
  spec.format = "json";
  std::ostringstream out;
  run_command(spec, out);
  const auto doc = nlohmann::json::parse(out.str());
  CHECK(doc["genie"]["regime"] == "single_active");
  CHECK(doc["genie"]["mu"][0].get<double>() == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(doc["genie"]["mu"][1].get<double>() == 0.0);
}

TEST_CASE("sweep-lambda table shape and analytic columns") {
  ExperimentSpec spec = quick_spec("sweep-lambda");
  std::ostringstream out;
  run_command(spec, out);
  const std::string text = out.str();
  CHECK(count_lines(text, '#') >= 10);  // metadata block

  std::istringstream in(text);
  std::string line;
  std::vector<std::string> data;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') data.push_back(line);
  }
  REQUIRE(data.size() == 3);  // header + 2 grid points
  CHECK(data[0].rfind("lambda_H,pi_H_lambda_H,R_local_analytic,R_genie_analytic,", 0) == 0);

  // Last grid point is exactly lambda_h_max; the analytic genie value there
  // matches the library.
  const double lam_max = 0.2921747840086234;
  CHECK(data[2].rfind(format_double(lam_max) + ",", 0) == 0);
}

TEST_CASE("sweep-battery defaults lambda to lambda_h_max and reports rates") {
  ExperimentSpec spec = quick_spec("sweep-battery");
  spec.lambda_high = std::nan("");  // unset: defaults to lambda_h_max
  spec.e_max_list = "1,4";
  spec.format = "json";
  std::ostringstream out;
  run_command(spec, out);
  const auto doc = nlohmann::json::parse(out.str());
  REQUIRE(doc["rows"].size() == 2);
  CHECK(doc["rows"][0]["e_max_quanta"] == "1");
  CHECK(doc["meta"]["lambda_high"] == format_double(0.2921747840086234));
  // Capacity one forces outages.
  CHECK(std::stod(doc["rows"][0]["outage_rate_local"].get<std::string>()) > 0.0);
  // Ideal columns repeat across rows.
  CHECK(doc["rows"][0]["R_local_ideal"] == doc["rows"][1]["R_local_ideal"]);
}

TEST_CASE("simulate echoes the seed and is reproducible in-process") {
  ExperimentSpec spec = quick_spec("simulate");
  spec.scheme = "genie";
  spec.seed = 77;
  std::ostringstream a;
  std::ostringstream b;
  run_command(spec, a);
  run_command(spec, b);
  CHECK(a.str() == b.str());
  CHECK(a.str().find("# seed: 77") != std::string::npos);

  ExperimentSpec other = spec;
  other.seed = 78;
  std::ostringstream c;
  run_command(other, c);
  CHECK(a.str() != c.str());
}

TEST_CASE("simulate cross-checks the analytic genie throughput") {
  ExperimentSpec spec = quick_spec("simulate");
  spec.scheme = "genie";
  spec.slots = 50'000;
  spec.burn_in = 1'000;
  spec.replications = 4;
  spec.format = "json";
  std::ostringstream out;
  run_command(spec, out);
  const auto doc = nlohmann::json::parse(out.str());
  const auto& row = doc["rows"][0];
  const double mc = std::stod(row["throughput"].get<std::string>());
  const double se = std::stod(row["throughput_stderr"].get<std::string>());
  const EhChain chain(0.004, 0.020, 0.15, 0.0, 1.0);
  const double analytic = genie_rbar(genie_optimal(20, chain), chain);
  CHECK(std::abs(mc - analytic) <= 3.0 * se);
}

#include "report_io.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include "ehma/version.hpp"
#include "experiment_spec.hpp"

namespace ehma::cli {

std::string format_double(double value) {
  char buf[48];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value,
                                 std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

std::vector<std::pair<std::string, std::string>> metadata(
    const ExperimentSpec& spec) {
  std::vector<std::pair<std::string, std::string>> meta;
  meta.emplace_back("ehma_version", kVersion);
  meta.emplace_back("command", spec.command);
  meta.emplace_back("nodes", std::to_string(spec.nodes));
  meta.emplace_back("p_high", format_double(spec.p_high));
  meta.emplace_back("p_low", format_double(spec.p_low));
  if (spec.command == "sweep-lambda") {
    meta.emplace_back("lambda_high", "swept");
  } else {
    meta.emplace_back("lambda_high", std::isnan(spec.lambda_high)
                                         ? "unset"
                                         : format_double(spec.lambda_high));
  }
  meta.emplace_back("lambda_low", format_double(spec.lambda_low));
  meta.emplace_back("ptx", format_double(spec.p_tx));
  meta.emplace_back("scheme", spec.scheme);
  meta.emplace_back("mode", spec.mode);
  if (spec.command == "sweep-battery") {
    meta.emplace_back("emax", spec.e_max_list);
  } else {
    meta.emplace_back("emax", std::to_string(spec.e_max_quanta));
  }
  meta.emplace_back("slots", std::to_string(spec.slots));
  meta.emplace_back("burn_in", std::to_string(spec.burn_in));
  meta.emplace_back("replications", std::to_string(spec.replications));
  meta.emplace_back("seed", std::to_string(spec.seed));
  meta.emplace_back("grid_points", std::to_string(spec.grid_points));
  return meta;
}

void ReportTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns_.size()) {
    throw std::logic_error("ReportTable: row width does not match header");
  }
  rows_.push_back(std::move(cells));
}

void ReportTable::write_csv(
    std::ostream& out,
    const std::vector<std::pair<std::string, std::string>>& meta) const {
  for (const auto& [key, value] : meta) out << "# " << key << ": " << value << "\n";
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    out << columns_[c] << (c + 1 < columns_.size() ? "," : "\n");
  }
  for (const auto& row : rows_) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << row[c] << (c + 1 < row.size() ? "," : "\n");
    }
  }
}

void ReportTable::write_json(
    std::ostream& out,
    const std::vector<std::pair<std::string, std::string>>& meta) const {
  nlohmann::ordered_json doc;
  nlohmann::ordered_json meta_obj;
  for (const auto& [key, value] : meta) meta_obj[key] = value;
  doc["meta"] = std::move(meta_obj);
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : rows_) {
    nlohmann::ordered_json obj;
    for (std::size_t c = 0; c < row.size(); ++c) obj[columns_[c]] = row[c];
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  out << doc.dump(2) << "\n";
}

std::string cell(double value) { return format_double(value); }
std::string cell(std::int64_t value) { return std::to_string(value); }
std::string cell(std::uint64_t value) { return std::to_string(value); }
std::string cell(int value) { return std::to_string(value); }

}  // namespace ehma::cli

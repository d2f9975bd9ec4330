#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace ehma::cli {

struct ExperimentSpec;

/// Locale-independent decimal rendering at 12 significant digits
/// (std::to_chars), identical across platforms for identical bits.
std::string format_double(double value);

/// Ordered key/value metadata common to every output file: tool version,
/// command, and the full parameter set including the seed. No timestamps or
/// host details, so reruns are byte-identical.
std::vector<std::pair<std::string, std::string>> metadata(
    const ExperimentSpec& spec);

/// A CSV table with '#'-prefixed metadata lines, a header row, and
/// format_double cells; or the same content as a JSON document with a "meta"
/// object and a "rows" array.
class ReportTable {
 public:
  explicit ReportTable(std::vector<std::string> columns)
      : columns_(std::move(columns)) {}

  void add_row(std::vector<std::string> cells);

  void write_csv(std::ostream& out,
                 const std::vector<std::pair<std::string, std::string>>& meta) const;
  void write_json(std::ostream& out,
                  const std::vector<std::pair<std::string, std::string>>& meta) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

std::string cell(double value);
std::string cell(std::int64_t value);
std::string cell(std::uint64_t value);
std::string cell(int value);

}  // namespace ehma::cli

#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "run_config.hpp"

namespace annulus::cli {

/// Empty, integer, real or text.
using Cell = std::variant<std::monostate, long, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  /// Written as a trailing "# key=value ..." line in CSV and under "summary" in JSON.
  nlohmann::json summary;
};

void write_csv(std::ostream& out, const RunConfig& cfg, const Table& table);
void write_json(std::ostream& out, const RunConfig& cfg, const Table& table);

}  // namespace annulus::cli

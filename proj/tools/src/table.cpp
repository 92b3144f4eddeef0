#include "table.hpp"

#include "annulus/io.hpp"

namespace annulus::cli {
namespace {

std::string cell_text(const Cell& cell) {
  struct Visitor {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(long v) const { return std::to_string(v); }
    std::string operator()(double v) const { return io::format_real(v); }
    std::string operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, cell);
}

using ordered = nlohmann::ordered_json;

ordered cell_json(const Cell& cell) {
  struct Visitor {
    ordered operator()(std::monostate) const { return nullptr; }
    ordered operator()(long v) const { return v; }
    ordered operator()(double v) const {
      const nlohmann::json j = number(v);
      return j.is_null() ? ordered(nullptr) : ordered(j.get<double>());
    }
    ordered operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, cell);
}

}  // namespace

void write_csv(std::ostream& out, const RunConfig& cfg, const Table& table) {
  write_config_comment(out, cfg);
  io::write_csv_row(out, table.columns);
  std::vector<std::string> fields;
  for (const auto& row : table.rows) {
    fields.clear();
    for (const Cell& c : row) fields.push_back(cell_text(c));
    io::write_csv_row(out, fields);
  }
  if (table.summary.is_object() && !table.summary.empty()) {
    out << "# summary";
    for (const auto& [key, value] : table.summary.items()) out << ' ' << key << '=' << value.dump();
    out << '\n';
  }
}

void write_json(std::ostream& out, const RunConfig& cfg, const Table& table) {
  ordered doc;
  doc["schema"] = 1;
  doc["command"] = cfg.command;
  doc["config"] = ordered::parse(config_json(cfg).dump());
  doc["columns"] = table.columns;
  ordered rows = ordered::array();
  for (const auto& row : table.rows) {
    ordered obj = ordered::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = cell_json(row[i]);
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  if (table.summary.is_object() && !table.summary.empty()) doc["summary"] = ordered::parse(table.summary.dump());
  out << doc.dump(2) << '\n';
}

}  // namespace annulus::cli

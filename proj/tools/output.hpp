#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace ptscatter::cli {

/// null, floating, integer or enum-label cell.
using Cell = std::variant<std::monostate, double, long long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// 17 significant digits: enough to round-trip any double, stable to diff.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "NaN";
  if (std::isinf(v)) return v > 0 ? "Inf" : "-Inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string cell_to_csv(const Cell& cell) {
  if (std::holds_alternative<std::monostate>(cell)) return "";
  if (const auto* d = std::get_if<double>(&cell)) return format_double(*d);
  if (const auto* i = std::get_if<long long>(&cell)) return std::to_string(*i);
  return std::get<std::string>(cell);
}

inline std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ',';
    out += table.columns[c];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += cell_to_csv(row[c]);
    }
    out += '\n';
  }
  return out;
}

inline nlohmann::ordered_json cell_to_json(const Cell& cell) {
  if (std::holds_alternative<std::monostate>(cell)) return nullptr;
  if (const auto* d = std::get_if<double>(&cell)) {
    // JSON has no NaN/Inf tokens; keep them as the same literals CSV uses.
    if (!std::isfinite(*d)) return format_double(*d);
    return *d;
  }
  if (const auto* i = std::get_if<long long>(&cell)) return *i;
  return std::get<std::string>(cell);
}

/// One top-level object with params, rows and meta.
inline std::string to_json(const nlohmann::ordered_json& params,
                           const Table& table,
                           const nlohmann::ordered_json& meta) {
  nlohmann::ordered_json doc;
  doc["params"] = params;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json jrow;
    for (std::size_t c = 0; c < row.size(); ++c) {
      jrow[table.columns[c]] = cell_to_json(row[c]);
    }
    doc["rows"].push_back(std::move(jrow));
  }
  doc["meta"] = meta;
  return doc.dump(2) + "\n";
}

}  // namespace ptscatter::cli

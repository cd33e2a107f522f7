#include "molqi/csv.hpp"

#include <cmath>
#include <cstdio>

#include "molqi/error.hpp"

namespace molqi {

void CsvTable::add_row(std::vector<double> row) {
  if (row.size() != columns.size()) {
    throw Error(ErrorCode::kDomainError, "row width does not match header");
  }
  rows.push_back(std::move(row));
}

void write_csv(std::ostream& out, const CsvTable& table) {
  for (const auto& row : table.rows)
    for (double v : row)
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::kDomainError, "non-finite value in CSV output");
      }
  for (const auto& [k, v] : table.meta) out << "# " << k << " = " << v << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << table.columns[i];
  }
  out << '\n';
  char buf[64];
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.12g", row[i]);
      out << (i ? "," : "") << buf;
    }
    out << '\n';
  }
}

}  // namespace molqi

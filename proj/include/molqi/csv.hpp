#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace molqi {

// Comment preamble, header row and numeric rows.
struct CsvTable {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row);
};

// Writes "# key = value" lines, the header and rows with 12 significant
// digits. Throws DomainError on a non-finite value.
void write_csv(std::ostream& out, const CsvTable& table);

}  // namespace molqi

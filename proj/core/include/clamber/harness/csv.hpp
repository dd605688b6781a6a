#pragma once

#include <string>
#include <vector>

namespace clamber::harness {

/// Minimal deterministic CSV: fixed "%.*g" float formatting, '\n' line
/// endings, no quoting (field values must not contain commas).
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> columns);
  void add_row(const std::vector<double>& values);
  void add_row_mixed(const std::vector<std::string>& values);
  std::string str() const;
  void write(const std::string& path) const;
  static std::string format(double v);

 private:
  std::vector<std::string> columns_;
  std::vector<std::string> rows_;
};

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  int column_index(const std::string& name) const;  // -1 if absent
  double value(int row, const std::string& column) const;
};

/// Parse a CSV produced by CsvWriter. Throws std::runtime_error carrying
/// the 1-based line number on malformed rows.
CsvTable read_csv(const std::string& path);
CsvTable parse_csv(const std::string& text);

}  // namespace clamber::harness

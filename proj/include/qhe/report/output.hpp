#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qhe/verify.hpp"

namespace qhe::report {

using Json = nlohmann::ordered_json;

// {"value": v, "unit": u}; non-finite values become null.
Json quantity(double value, const std::string& unit);
Json to_json(const Verdict& v);

// Shortest round-trip form, 17 significant digits at most.
std::string format_number(double v);

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  void add_row(const std::vector<double>& row);
  void add_row(const std::vector<std::string>& row);
  std::string str() const;

 private:
  std::size_t columns_;
  std::string text_;
};

// Writes text verbatim (binary mode, LF line endings), creating parent directories.
void write_text(const std::string& path, const std::string& text);
void write_json(const std::string& path, const Json& j);
void write_jsonl(const std::string& path, const std::vector<Json>& lines);

// Gnuplot script plotting columns of a CSV file against its first column.
std::string gnuplot_script(const std::string& csv_name, const std::string& title,
                           const std::string& xlabel, const std::string& ylabel,
                           const std::vector<std::pair<int, std::string>>& series,
                           bool log_axes = false);

}  // namespace qhe::report

#include "qhe/report/output.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "qhe/errors.hpp"

namespace qhe::report {

Json quantity(double value, const std::string& unit) {
  Json j;
  j["value"] = std::isfinite(value) ? Json(value) : Json(nullptr);
  j["unit"] = unit;
  return j;
}

Json to_json(const Verdict& v) {
  Json j;
  j["lemma"] = v.lemma;
  Json params = Json::object();
  for (const auto& q : v.parameters) params[q.name] = quantity(q.value, q.unit);
  j["parameters"] = params;
  j["margin"] = quantity(v.margin, v.margin_unit);
  j["status"] = std::string(to_string(v.status));
  if (!v.detail.empty()) j["detail"] = v.detail;
  return j;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) text_ += (i ? "," : "") + header[i];
  text_ += '\n';
}

void CsvWriter::add_row(const std::vector<double>& row) {
  std::vector<std::string> s;
  s.reserve(row.size());
  for (double v : row) s.push_back(format_number(v));
  add_row(s);
}

void CsvWriter::add_row(const std::vector<std::string>& row) {
  if (row.size() != columns_) throw DomainError("CSV row width does not match the header");
  for (std::size_t i = 0; i < row.size(); ++i) text_ += (i ? "," : "") + row[i];
  text_ += '\n';
}

std::string CsvWriter::str() const { return text_; }

void write_text(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("write failed for " + path);
}

void write_json(const std::string& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

void write_jsonl(const std::string& path, const std::vector<Json>& lines) {
  std::string text;
  for (const auto& j : lines) text += j.dump() + "\n";
  write_text(path, text);
}

std::string gnuplot_script(const std::string& csv_name, const std::string& title,
                           const std::string& xlabel, const std::string& ylabel,
                           const std::vector<std::pair<int, std::string>>& series, bool log_axes) {
  std::string s;
  s += "set datafile separator ','\n";
  s += "set key autotitle columnhead\n";
  s += "set title '" + title + "'\n";
  s += "set xlabel '" + xlabel + "'\n";
  s += "set ylabel '" + ylabel + "'\n";
  if (log_axes) s += "set logscale xy\n";
  s += "set terminal pngcairo size 900,600\n";
  std::string png = csv_name;
  if (png.size() > 4 && png.substr(png.size() - 4) == ".csv") png.resize(png.size() - 4);
  s += "set output '" + png + ".png'\n";
  s += "plot ";
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (i) s += ", \\\n     ";
    s += "'" + csv_name + "' using 1:" + std::to_string(series[i].first) + " with " +
         (log_axes ? "linespoints" : "lines") + " title '" + series[i].second + "'";
  }
  s += "\n";
  return s;
}

}  // namespace qhe::report

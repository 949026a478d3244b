#include "qac/cli/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace qac::cli {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value == 0.0 ? 0.0 : value);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

CsvTable& CsvTable::row() {
  cells_.emplace_back();
  return *this;
}

CsvTable& CsvTable::add(double value) { return add(format_double(value)); }
CsvTable& CsvTable::add(int value) { return add(std::to_string(value)); }
CsvTable& CsvTable::add(bool value) { return add(std::string(value ? "1" : "0")); }

CsvTable& CsvTable::add(std::string value) {
  if (cells_.empty()) throw std::logic_error("CsvTable::add before row()");
  if (value.find_first_of(",\"\n") != std::string::npos) {
    std::string quoted = "\"";
    for (char ch : value) {
      if (ch == '"') quoted += '"';
      quoted += ch;
    }
    value = quoted + '"';
  }
  cells_.back().push_back(std::move(value));
  return *this;
}

std::string CsvTable::str() const {
  std::string out;
  const auto line = [&out](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out += ',';
      out += fields[i];
    }
    out += '\n';
  };
  line(header_);
  for (const auto& r : cells_) {
    if (r.size() != header_.size()) throw std::logic_error("CSV row width does not match header");
    line(r);
  }
  return out;
}

void CsvTable::write(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << str();
}

}  // namespace qac::cli

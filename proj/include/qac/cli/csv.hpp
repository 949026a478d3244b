#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace qac::cli {

/// Round-trip decimal form: %.17g, with "inf", "-inf" and "nan" spelled out.
std::string format_double(double value);

/// In-memory table written with LF endings and a mandatory header row.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  CsvTable& row();
  CsvTable& add(double value);
  CsvTable& add(int value);
  CsvTable& add(bool value);
  CsvTable& add(std::string value);

  std::size_t rows() const noexcept { return cells_.size(); }
  std::string str() const;
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> cells_;
};

}  // namespace qac::cli

#pragma once

// Locale-independent CSV: one header row, '.' decimals, doubles printed with
// 17 significant digits so every value parses back to the same bits.

#include <filesystem>
#include <string>
#include <vector>

namespace qze::csv {

std::string format_real(double v);

class Table {
 public:
  explicit Table(std::vector<std::string> header);

  Table& row();
  Table& add(double v);
  Table& add(int v);
  Table& add(long long v);
  Table& add(std::size_t v);
  Table& add(const std::string& v);

  /// The table text, last row terminated.
  std::string str() const;
  std::size_t columns() const { return columns_; }

 private:
  void separator();

  std::string text_;
  std::size_t columns_ = 0;
  std::size_t in_row_ = 0;
  bool open_ = false;
};

/// Writes to a temporary file beside path, then renames it into place.
/// Throws IoError naming the path on failure; never leaves a partial file.
void write_atomic(const std::filesystem::path& path, const std::string& content);

struct Parsed {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

Parsed parse(const std::string& text);
double parse_real(const std::string& cell);

}  // namespace qze::csv

#include "qze/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "qze/error.hpp"

#ifdef _WIN32
#include <process.h>
#define QZE_GETPID _getpid
#else
#include <unistd.h>
#define QZE_GETPID getpid
#endif

namespace qze::csv {

std::string format_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

Table::Table(std::vector<std::string> header) : columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) text_ += ',';
    text_ += header[i];
  }
  text_ += '\n';
}

Table& Table::row() {
  if (open_ && in_row_ != columns_) throw UsageError("csv row has the wrong number of cells");
  if (open_) text_ += '\n';
  open_ = true;
  in_row_ = 0;
  return *this;
}

void Table::separator() {
  if (!open_) throw UsageError("csv cell added before row()");
  if (in_row_ == columns_) throw UsageError("csv row has too many cells");
  if (in_row_) text_ += ',';
  ++in_row_;
}

Table& Table::add(double v) {
  separator();
  text_ += format_real(v);
  return *this;
}

Table& Table::add(int v) {
  separator();
  text_ += std::to_string(v);
  return *this;
}

Table& Table::add(long long v) {
  separator();
  text_ += std::to_string(v);
  return *this;
}

Table& Table::add(std::size_t v) {
  separator();
  text_ += std::to_string(v);
  return *this;
}

Table& Table::add(const std::string& v) {
  separator();
  text_ += v;
  return *this;
}

std::string Table::str() const {
  if (!open_) return text_;
  if (in_row_ != columns_) throw UsageError("csv row has the wrong number of cells");
  return text_ + '\n';
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(QZE_GETPID());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(path.string(), "cannot open output file for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw IoError(path.string(), "failed while writing output file");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError(path.string(), "cannot move output file into place");
  }
}

Parsed parse(const std::string& text) {
  Parsed out;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    if (first) {
      out.header = std::move(cells);
      first = false;
    } else {
      out.rows.push_back(std::move(cells));
    }
  }
  return out;
}

double parse_real(const std::string& cell) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) {
    throw ConfigError("not a number in csv: '" + cell + "'");
  }
  return v;
}

}  // namespace qze::csv

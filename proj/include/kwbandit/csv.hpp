#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "kwbandit/error.hpp"

namespace kwb {

/// Shortest decimal form that parses back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// RFC 4180 field: quoted when it holds a comma, quote, CR or LF.
inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

/// Builds rows in memory; LF line endings, one header row.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header) : columns_(header.size()) { row(header); }

  CsvWriter& cell(std::string_view s) { return raw(csv_field(s)); }
  CsvWriter& cell(const char* s) { return cell(std::string_view(s)); }
  CsvWriter& cell(const std::string& s) { return cell(std::string_view(s)); }
  CsvWriter& cell(double v) { return raw(format_double(v)); }
  CsvWriter& cell(std::int64_t v) { return raw(std::to_string(v)); }
  CsvWriter& cell(std::uint64_t v) { return raw(std::to_string(v)); }
  CsvWriter& cell(int v) { return raw(std::to_string(v)); }
  CsvWriter& cell(bool v) { return raw(v ? "1" : "0"); }

  void end_row() {
    require(pending_ == columns_, "csv: row has " + std::to_string(pending_) + " cells, expected " +
                                      std::to_string(columns_));
    text_ += '\n';
    pending_ = 0;
  }

  void row(const std::vector<std::string>& cells) {
    for (const auto& c : cells) cell(c);
    end_row();
  }

  const std::string& str() const { return text_; }

  void write(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out.write(text_.data(), static_cast<std::streamsize>(text_.size()));
    if (!out) throw IoError("write failed: " + path.string());
  }

 private:
  CsvWriter& raw(const std::string& s) {
    if (pending_ > 0) text_ += ',';
    text_ += s;
    ++pending_;
    return *this;
  }

  std::size_t columns_;
  std::size_t pending_ = 0;
  std::string text_;
};

inline void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir))
    throw IoError("cannot create output directory " + dir.string());
}

}  // namespace kwb

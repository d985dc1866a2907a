#pragma once

#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

namespace faberelast::cli {

/// Shortest round-trip-safe rendering: 17 significant digits, '.' separator.
std::string format_double(double v);

/// Comma-separated writer with LF line endings. ConfigError if the file cannot be opened.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, std::initializer_list<std::string> header);
  ~CsvWriter();

  CsvWriter& operator<<(double v);
  CsvWriter& operator<<(int v);
  CsvWriter& operator<<(const std::string& v);
  CsvWriter& operator<<(const char* v) { return *this << std::string(v); }
  void end_row();

 private:
  void sep();

  std::ofstream out_;
  std::string path_;
  bool row_start_ = true;
};

}  // namespace faberelast::cli

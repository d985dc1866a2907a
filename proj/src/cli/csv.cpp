#include "faberelast/cli/csv.hpp"

#include <cstdio>

#include "faberelast/errors.hpp"

namespace faberelast::cli {

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path, std::initializer_list<std::string> header)
    : out_(path, std::ios::binary | std::ios::trunc), path_(path) {
  if (!out_) throw ConfigError("cannot write '" + path + "'");
  for (const auto& h : header) *this << h;
  end_row();
}

CsvWriter::~CsvWriter() { out_.flush(); }

void CsvWriter::sep() {
  if (!row_start_) out_ << ',';
  row_start_ = false;
}

CsvWriter& CsvWriter::operator<<(double v) {
  sep();
  out_ << format_double(v);
  return *this;
}

CsvWriter& CsvWriter::operator<<(int v) {
  sep();
  out_ << v;
  return *this;
}

CsvWriter& CsvWriter::operator<<(const std::string& v) {
  sep();
  out_ << v;
  return *this;
}

void CsvWriter::end_row() {
  out_ << '\n';
  row_start_ = true;
  if (!out_) throw ConfigError("write to '" + path_ + "' failed");
}

}  // namespace faberelast::cli

#include "abrsa/csv.hpp"

#include <cmath>
#include <cstdio>

namespace abrsa {

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void CsvWriter::header(std::initializer_list<std::string_view> columns) {
  for (auto c : columns) field(c);
  end_row();
}

void CsvWriter::separator() {
  if (row_started_) out_ << ',';
  row_started_ = true;
}

CsvWriter& CsvWriter::field(std::string_view text) {
  separator();
  out_ << text;
  return *this;
}

CsvWriter& CsvWriter::field(double value) { return field(std::string_view(format_real(value))); }

CsvWriter& CsvWriter::field(unsigned long long value) {
  separator();
  out_ << value;
  return *this;
}

void CsvWriter::end_row() {
  out_ << '\n';
  row_started_ = false;
}

}  // namespace abrsa

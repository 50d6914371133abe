#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>

namespace abrsa {

/// Shortest-safe decimal form with 17 significant digits; "nan"/"inf" for
/// non-finite values.
std::string format_real(double v);

/// Writes comma-separated fields terminated by '\n'. Fields are emitted as
/// given; none of ours contain commas or quotes.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void header(std::initializer_list<std::string_view> columns);

  CsvWriter& field(std::string_view text);
  CsvWriter& field(double value);
  CsvWriter& field(unsigned long long value);
  void end_row();

 private:
  void separator();

  std::ostream& out_;
  bool row_started_ = false;
};

}  // namespace abrsa

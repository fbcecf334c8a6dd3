#include "curve_writer.hpp"

#include <cstdio>

namespace qgv_cli {

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.15g", value);
  return buf;
}

std::string transmission_label(int j, int l, int n) {
  char buf[32];
  if (n <= 9)
    std::snprintf(buf, sizeof(buf), "T_%d%d", j + 1, l + 1);
  else
    std::snprintf(buf, sizeof(buf), "T_%d_%d", j + 1, l + 1);
  return buf;
}

void CsvWriter::header(const std::vector<std::string>& names) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out_ << ',';
    out_ << names[i];
  }
  out_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out_ << ',';
    out_ << format_number(values[i]);
  }
  out_ << '\n';
}

}  // namespace qgv_cli

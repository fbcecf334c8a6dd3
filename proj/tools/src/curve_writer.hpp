#ifndef QGV_TOOLS_CURVE_WRITER_HPP
#define QGV_TOOLS_CURVE_WRITER_HPP

#include <ostream>
#include <string>
#include <vector>

namespace qgv_cli {

// Fixed numeric formatting for CSV cells: 15 significant digits, shortest
// form, so identical runs emit byte-identical files.
std::string format_number(double value);

// Column label for the transmission j -> l (0-based in code, 1-based in the
// header). Degrees of 10 and above switch to an underscore-separated form so
// the indices stay unambiguous.
std::string transmission_label(int j, int l, int n);

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void header(const std::vector<std::string>& names);
  void row(const std::vector<double>& values);

 private:
  std::ostream& out_;
};

}  // namespace qgv_cli

#endif  // QGV_TOOLS_CURVE_WRITER_HPP

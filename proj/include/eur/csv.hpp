#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace eur {

/// 12 significant digits, "nan"/"inf"/"-inf" for non-finite values.
std::string format_number(double v);

/// Comma-separated rows with LF endings. Cells are written verbatim, so
/// callers must not pass text containing commas or newlines.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& header);

  void row(const std::vector<std::string>& cells);
  void row(const std::vector<double>& values);

 private:
  std::ostream& out_;
  std::size_t columns_;
};

}  // namespace eur

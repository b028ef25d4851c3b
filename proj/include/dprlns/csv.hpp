#ifndef DPRLNS_CSV_HPP_
#define DPRLNS_CSV_HPP_

#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace dprlns {

/// RFC 4180 writer: CRLF-free ('\n') records, fields quoted only when they
/// contain a comma, a quote or a line break.
class CsvWriter {
public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void row(const std::vector<std::string>& fields);

private:
  std::ostream& out_;
};

using CsvTable = std::vector<std::vector<std::string>>;

/// RFC 4180 reader (quoted fields, doubled quotes, embedded line breaks;
/// accepts both "\n" and "\r\n"). Throws ParseError on an unterminated quote.
CsvTable parse_csv(std::istream& in);
CsvTable parse_csv(std::string_view text);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

}  // namespace dprlns

#endif  // DPRLNS_CSV_HPP_

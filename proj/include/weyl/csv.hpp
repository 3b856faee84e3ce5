#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace weyl {

// Shortest text form that round-trips a double exactly.
std::string format_double(double x);

// Strict double parse of an entire trimmed token; ParseError otherwise.
// `where` names the token position for the error message.
double parse_double(const std::string& token, const std::string& where);

// Splits on commas, trims ASCII whitespace around each field.
std::vector<std::string> split_csv_fields(const std::string& line);

// All numbers from a CSV stream, one inner vector per non-empty line.
// Lines starting with '#' are skipped. ParseError carries line numbers.
// `first_line` offsets the reported numbers when the caller has already
// consumed a header.
std::vector<std::vector<double>> read_csv_numbers(std::istream& in, int first_line = 1);
std::vector<std::vector<double>> read_csv_numbers_file(const std::string& path);

}  // namespace weyl

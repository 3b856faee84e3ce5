#include "weyl/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>

#include "weyl/errors.hpp"

namespace weyl {

std::string format_double(double x) {
    // 17 significant digits always round-trip; try shorter forms first so
    // common values stay readable.
    char buf[40];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, x);
        double back = 0.0;
        std::sscanf(buf, "%lf", &back);
        if (back == x) break;
    }
    return buf;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

double parse_double(const std::string& token, const std::string& where) {
    const std::string t = trim(token);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size())
        throw ParseError(where + ": not a number: '" + token + "'");
    return value;
}

std::vector<std::string> split_csv_fields(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(trim(line.substr(start)));
            break;
        }
        out.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return out;
}

std::vector<std::vector<double>> read_csv_numbers(std::istream& in, int first_line) {
    std::vector<std::vector<double>> rows;
    std::string line;
    int lineno = first_line - 1;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        std::vector<double> row;
        for (const std::string& field : split_csv_fields(stripped))
            row.push_back(parse_double(field, "line " + std::to_string(lineno)));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<std::vector<double>> read_csv_numbers_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    return read_csv_numbers(in);
}

}  // namespace weyl

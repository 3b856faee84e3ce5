#include "weyl/spectrum_io.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

#include "weyl/csv.hpp"

namespace weyl {

namespace {

int parse_header_m(const std::string& line, const std::string& origin) {
    if (line.rfind("m=", 0) != 0)
        throw ParseError(origin + ": expected header 'm=<int>', got '" + line + "'");
    const std::string digits = line.substr(2);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError(origin + ": bad bit width '" + digits + "'");
    const int m = std::stoi(digits);
    if (m < 1 || m > BitTuple::kMaxBits)
        throw ParseError(origin + ": bit width " + digits + " out of range");
    return m;
}

}  // namespace

void write_spectrum_csv(std::ostream& out, const WeylSpectrum& s) {
    const std::size_t n = std::size_t{1} << s.m;
    out << "m=" << s.m << "\n";
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if (b) out << ",";
            out << format_double(s.coeffs[a * n + b]);
        }
        out << "\n";
    }
}

void write_spectrum_csv_file(const std::string& path, const WeylSpectrum& s) {
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write " + path);
    write_spectrum_csv(out, s);
    if (!out) throw UsageError("write failed: " + path);
}

WeylSpectrum read_spectrum_csv(std::istream& in, const std::string& origin) {
    std::string header;
    if (!std::getline(in, header)) throw ParseError(origin + ": empty input");
    if (!header.empty() && header.back() == '\r') header.pop_back();

    WeylSpectrum s;
    s.m = parse_header_m(header, origin);
    const std::size_t want = std::size_t{1} << (2 * s.m);

    for (const auto& row : read_csv_numbers(in, 2))
        s.coeffs.insert(s.coeffs.end(), row.begin(), row.end());
    if (s.coeffs.size() != want)
        throw ParseError(origin + ": expected " + std::to_string(want) + " coefficients, got " +
                         std::to_string(s.coeffs.size()));
    return s;
}

WeylSpectrum read_spectrum_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    return read_spectrum_csv(in, path);
}

void write_spectrum_binary_file(const std::string& path, const WeylSpectrum& s) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path);
    const std::uint32_t m = static_cast<std::uint32_t>(s.m);
    out.write(reinterpret_cast<const char*>(&m), sizeof m);
    out.write(reinterpret_cast<const char*>(s.coeffs.data()),
              static_cast<std::streamsize>(s.coeffs.size() * sizeof(double)));
    if (!out) throw UsageError("write failed: " + path);
}

WeylSpectrum read_spectrum_binary_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open " + path);
    std::uint32_t m = 0;
    in.read(reinterpret_cast<char*>(&m), sizeof m);
    if (!in || m < 1 || m > static_cast<std::uint32_t>(BitTuple::kMaxBits))
        throw ParseError(path + ": bad binary spectrum header");
    WeylSpectrum s;
    s.m = static_cast<int>(m);
    s.coeffs.resize(std::size_t{1} << (2 * s.m));
    in.read(reinterpret_cast<char*>(s.coeffs.data()),
            static_cast<std::streamsize>(s.coeffs.size() * sizeof(double)));
    if (!in)
        throw ParseError(path + ": truncated at byte " + std::to_string(in.gcount() + 4));
    return s;
}

}  // namespace weyl

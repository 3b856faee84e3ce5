#pragma once

#include <iosfwd>
#include <string>

#include "weyl/weyl_transform.hpp"

namespace weyl {

// Text form: header line "m=<int>", then the 2^(2m) coefficients in
// canonical (a-major, b-minor) order as 2^m comma-separated rows of 2^m
// values. The reader accepts any line layout after the header as long as
// the total count matches.
void write_spectrum_csv(std::ostream& out, const WeylSpectrum& s);
void write_spectrum_csv_file(const std::string& path, const WeylSpectrum& s);
WeylSpectrum read_spectrum_csv(std::istream& in, const std::string& origin);
WeylSpectrum read_spectrum_csv_file(const std::string& path);

// Binary form: little-endian uint32 bit width, then 2^(2m) doubles.
void write_spectrum_binary_file(const std::string& path, const WeylSpectrum& s);
WeylSpectrum read_spectrum_binary_file(const std::string& path);

}  // namespace weyl

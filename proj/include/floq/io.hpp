#ifndef FLOQ_IO_HPP
#define FLOQ_IO_HPP

#include <complex>
#include <string>
#include <vector>

namespace floq::io {

// Floats with 17 significant digits (round-trip exact), LF line endings.
std::string fmt(double v);

std::vector<double> split_doubles(const std::string& csv_tail);

// Complex literal: "1.5", "2i", "1+2i", "-0.5-0.25i", "i", "-i".
std::complex<double> parse_complex(const std::string& s);

// "re,im" pair.
std::complex<double> parse_complex_pair(const std::string& s);

// Contour spec "start:end:count" -> `count` samples start + (end-start)*j/count
// (half-open; count >= 1).
std::vector<std::complex<double>> parse_contour(const std::string& s);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

} // namespace floq::io

#endif

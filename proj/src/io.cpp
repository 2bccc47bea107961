#include "floq/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "floq/errors.hpp"

namespace floq::io {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<double> split_doubles(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stod(tok));
    }
    return out;
}

std::complex<double> parse_complex(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw invalid_input("empty complex literal");
    // pure imaginary shorthand
    if (s == "i" || s == "+i") return {0.0, 1.0};
    if (s == "-i") return {0.0, -1.0};
    const bool imag = s.back() == 'i' || s.back() == 'I';
    std::string body = imag ? s.substr(0, s.size() - 1) : s;
    // split at the last +/- that is not an exponent sign and not leading
    size_t split = std::string::npos;
    for (size_t k = body.size(); k-- > 1;) {
        const char c = body[k];
        if ((c == '+' || c == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    try {
        if (!imag) {
            if (split != std::string::npos) throw invalid_input("bad complex literal: " + raw);
            return {std::stod(body), 0.0};
        }
        if (split == std::string::npos) {
            if (body.empty() || body == "+") return {0.0, 1.0};
            if (body == "-") return {0.0, -1.0};
            return {0.0, std::stod(body)};
        }
        const double re = std::stod(body.substr(0, split));
        std::string im = body.substr(split);
        if (im == "+") return {re, 1.0};
        if (im == "-") return {re, -1.0};
        return {re, std::stod(im)};
    } catch (const std::logic_error&) {
        throw invalid_input("bad complex literal: " + raw);
    }
}

std::complex<double> parse_complex_pair(const std::string& s) {
    auto v = split_doubles(s);
    if (v.size() == 1) return {v[0], 0.0};
    if (v.size() != 2) throw invalid_input("expected re,im pair: " + s);
    return {v[0], v[1]};
}

std::vector<std::complex<double>> parse_contour(const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(tok);
    if (parts.size() != 3) throw invalid_input("contour spec must be start:end:count - " + s);
    const auto a = parse_complex(parts[0]);
    const auto b = parse_complex(parts[1]);
    const int count = std::stoi(parts[2]);
    if (count < 1) throw invalid_input("contour count must be >= 1");
    std::vector<std::complex<double>> out(count);
    for (int j = 0; j < count; ++j) out[j] = a + (b - a) * (double(j) / count);
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw invalid_input("cannot open for writing: " + path);
    os << content;
}

std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw invalid_input("cannot open: " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

} // namespace floq::io

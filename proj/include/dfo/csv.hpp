#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace dfo {

// Fixed report schema shared by the CLI commands; missing values stay
// empty.  Formatting is locale-independent: '.' decimal separator,
// lowercase scientific with 9 significant digits.
struct CsvRow {
    std::string problem;
    std::string basis;
    std::string model;
    std::optional<double> h;
    std::optional<double> eta;
    std::optional<std::uint64_t> nf;
    std::optional<double> eps_g;
    std::optional<double> eps_d;
    std::optional<double> fmin;
    std::optional<double> gnorm;
    std::optional<std::uint64_t> itns;
    std::optional<std::uint64_t> qmfs;
};

inline constexpr const char* kCsvHeader =
    "problem,basis,model,h,eta,nf,eps_g,eps_d,fmin,gnorm,itns,qmfs";

/// Lowercase scientific, 9 significant digits ("1.23456789e-04").
std::string format_scientific(double value);

/// RFC-4180: quotes a field iff it contains a comma, quote, or newline.
std::string csv_escape(const std::string& field);

std::string to_csv_line(const CsvRow& row);

}  // namespace dfo

#include "dfo/csv.hpp"

#include <array>
#include <charconv>
#include <stdexcept>

namespace dfo {

std::string format_scientific(double value) {
    std::array<char, 64> buf;
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                   std::chars_format::scientific, 8);
    if (res.ec != std::errc{}) {
        throw std::runtime_error("format_scientific: conversion failed");
    }
    return std::string(buf.data(), res.ptr);
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

namespace {

void append_field(std::string& line, const std::string& value, bool first) {
    if (!first) line += ',';
    line += csv_escape(value);
}

void append_opt(std::string& line, const std::optional<double>& value) {
    line += ',';
    if (value.has_value()) line += format_scientific(*value);
}

void append_opt(std::string& line, const std::optional<std::uint64_t>& value) {
    line += ',';
    if (value.has_value()) line += std::to_string(*value);
}

}  // namespace

std::string to_csv_line(const CsvRow& row) {
    std::string line;
    append_field(line, row.problem, true);
    append_field(line, row.basis, false);
    append_field(line, row.model, false);
    append_opt(line, row.h);
    append_opt(line, row.eta);
    append_opt(line, row.nf);
    append_opt(line, row.eps_g);
    append_opt(line, row.eps_d);
    append_opt(line, row.fmin);
    append_opt(line, row.gnorm);
    append_opt(line, row.itns);
    append_opt(line, row.qmfs);
    return line;
}

}  // namespace dfo

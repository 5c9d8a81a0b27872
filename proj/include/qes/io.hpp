#pragma once

/** \file io.hpp
 *
 *  \brief Text conventions shared by the command-line tool: numbers carry
 *         10 significant digits, CSV follows RFC 4180, theta accepts the
 *         benchmark tokens sqrt2 / sqrt6.
 */

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "qes/error.hpp"

namespace qes::io {

inline constexpr int significant_digits = 10;

/// "%#.10g": trailing zeros kept, so 4 prints as 4.000000000.
inline std::string format_number(double v)
{
    if (!std::isfinite(v)) {
        return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    }
    if (v == 0.0) {
        v = 0.0; // drop the sign of -0
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%#.*g", significant_digits, v);
    return buf;
}

/// v rounded to 10 significant digits (for JSON emitters).
inline double round_number(double v)
{
    if (!std::isfinite(v)) {
        return v;
    }
    return std::strtod(format_number(v).c_str(), nullptr);
}

/// Decimal literal or one of sqrt2, -sqrt2, sqrt6, -sqrt6.
inline double parse_theta(std::string_view text)
{
    bool negative = false;
    std::string_view body = text;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    if (body == "sqrt2") {
        return negative ? -std::sqrt(2.0) : std::sqrt(2.0);
    }
    if (body == "sqrt6") {
        return negative ? -std::sqrt(6.0) : std::sqrt(6.0);
    }
    std::string_view num = text.substr(!text.empty() && text.front() == '+' ? 1 : 0);
    double value = 0.0;
    auto const [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), value);
    if (ec != std::errc() || ptr != num.data() + num.size() || num.empty() || !std::isfinite(value)) {
        throw DomainError("cannot parse theta value '" + std::string(text) + "'");
    }
    return value;
}

inline std::string csv_field(std::string_view field)
{
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
        return std::string(field);
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

inline std::string csv_row(std::vector<std::string> const& fields)
{
    std::string line;
    for (std::size_t k = 0; k < fields.size(); ++k) {
        if (k > 0) {
            line += ',';
        }
        line += csv_field(fields[k]);
    }
    line += "\r\n";
    return line;
}

/// Writes content to path via a sibling temporary and rename; empty path
/// means standard output.
inline void write_output(std::string const& path, std::string const& content)
{
    if (path.empty()) {
        std::cout << content << std::flush;
        return;
    }
    std::filesystem::path const target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error("cannot open '" + tmp.string() + "' for writing");
        }
        out << content;
        if (!out.flush()) {
            throw Error("failed writing '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw Error("cannot move output into place at '" + path + "': " + ec.message());
    }
}

} // namespace qes::io

#pragma once

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "gbs/estimation.hpp"

namespace gbs {

namespace detail {

[[nodiscard]] inline std::string strip(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) {
        ++b;
    }
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) {
        --e;
    }
    return s.substr(b, e - b);
}

[[nodiscard]] inline bool parse_double(const std::string& token, double& out) {
    const std::string t = strip(token);
    if (t.empty()) {
        return false;
    }
    std::size_t consumed = 0;
    try {
        out = std::stod(t, &consumed);
    } catch (const std::exception&) {
        return false;
    }
    return consumed == t.size();
}

// One numeric column, optional non-numeric header. Line numbers are 1-based
// and refer to the physical file line for error reporting.
[[nodiscard]] inline std::vector<double> parse_numeric_column(const std::string& path,
                                                              bool require_non_negative) {
    std::ifstream in(path);
    if (!in) {
        throw io_error("cannot open " + path + " for reading");
    }
    std::vector<double> values;
    std::string line;
    std::size_t lineno = 0;
    bool first_content_line = true;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = strip(line);
        if (t.empty()) {
            continue;
        }
        double v = 0.0;
        if (!parse_double(t, v)) {
            if (first_content_line) {
                first_content_line = false; // header row such as "damage"
                continue;
            }
            throw io_error(path + ": line " + std::to_string(lineno) +
                           ": malformed numeric value '" + t + "'");
        }
        first_content_line = false;
        if (require_non_negative && v < 0.0) {
            throw io_error(path + ": line " + std::to_string(lineno) +
                           ": damage value must be non-negative, got " + t);
        }
        values.push_back(v);
    }
    if (values.empty()) {
        throw io_error(path + ": no numeric data rows");
    }
    return values;
}

} // namespace detail

[[nodiscard]] inline DamageSeries parse_damage_csv(const std::string& path,
                                                   std::optional<double> known_mean = {}) {
    return DamageSeries(detail::parse_numeric_column(path, true), known_mean);
}

// Same single-column format, but values may be any finite reals (inputs to
// the distance subcommand are arbitrary samples, not damages).
[[nodiscard]] inline std::vector<double> parse_sample_csv(const std::string& path) {
    return detail::parse_numeric_column(path, false);
}

struct GridSpec {
    double min = 0.0;
    double max = 0.0;
    std::size_t points = 0;
    bool log_scale = false;

    GridSpec(double min, double max, std::size_t points, bool log_scale = false)
        : min(min), max(max), points(points), log_scale(log_scale) {
        if (!(min < max)) {
            throw domain_error("GridSpec: min must be strictly below max");
        }
        if (points < 2) {
            throw domain_error("GridSpec: need at least 2 points");
        }
        if (log_scale && !(min > 0.0)) {
            throw domain_error("GridSpec: log spacing requires min > 0");
        }
    }

    [[nodiscard]] std::vector<double> values() const {
        std::vector<double> out(points);
        const double lo = log_scale ? std::log(min) : min;
        const double hi = log_scale ? std::log(max) : max;
        const double step = (hi - lo) / static_cast<double>(points - 1);
        for (std::size_t i = 0; i < points; ++i) {
            const double v = lo + step * static_cast<double>(i);
            out[i] = log_scale ? std::exp(v) : v;
        }
        out.front() = min;
        out.back() = max;
        return out;
    }
};

// Fixed 12-significant-digit formatting: wide enough for reproducible curve
// comparison, narrow enough to absorb last-ulp quadrature jitter.
[[nodiscard]] inline std::string format_curve_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

inline void emit_curve_csv(const std::function<double(double)>& fn, const GridSpec& grid,
                           const std::string& path) {
    std::ostringstream body;
    body << "t,value\n";
    for (double t : grid.values()) {
        body << format_curve_value(t) << ',' << format_curve_value(fn(t)) << '\n';
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << body.str()) || !out.flush()) {
        throw io_error("cannot write " + path);
    }
}

} // namespace gbs

#pragma once

/// Datasets at integer nodes, CSV ingestion and CSV/SVG emission.
///
/// CSV rows are "i,value" (curve data) or "i,j,value" (surface data). A
/// non-numeric first row is taken as a header; blank lines and lines starting
/// with '#' are skipped. Numbers are written with 15 significant digits.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bsmls/error.hpp"
#include "bsmls/surface.hpp"

namespace bsmls {

struct Dataset {
    std::string name;
    std::string provenance;
    int dimension = 1;           ///< 1: values at i = 0..n; 2: grid at (i, j), row-major in i
    int n = 0;
    std::vector<double> values;

    [[nodiscard]] std::size_t node_count() const noexcept { return values.size(); }
    [[nodiscard]] ValueGrid grid() const {
        if (dimension != 2) throw Error(ErrorCode::invalid_argument, name + " is not a surface dataset");
        return ValueGrid(n, values);
    }
};

/// f(x) = e^{-x^2} + 3 e^{-(x-4)^2} + 1.7 e^{-(x-8)^2}
[[nodiscard]] inline double xi0_curve_function(double x) {
    return std::exp(-x * x) + 3.0 * std::exp(-(x - 4.0) * (x - 4.0)) + 1.7 * std::exp(-(x - 8.0) * (x - 8.0));
}

/// f(x, y) = e^{-x^2} + 3 e^{-(y-1)^2} + e^{-(x-6)^2 - (y-6)^2}
[[nodiscard]] inline double xi0_surface_function(double x, double y) {
    return std::exp(-x * x) + 3.0 * std::exp(-(y - 1.0) * (y - 1.0)) +
           std::exp(-(x - 6.0) * (x - 6.0) - (y - 6.0) * (y - 6.0));
}

/// Built-in datasets sampled at i (and j) = 0..10: "xi0-curve", "xi0-surface".
[[nodiscard]] inline Dataset builtin_dataset(std::string_view name) {
    constexpr int n = 10;
    if (name == "xi0-curve") {
        Dataset d{.name = std::string(name), .provenance = "e^-x^2 + 3e^-(x-4)^2 + 1.7e^-(x-8)^2 at x = 0..10",
                  .dimension = 1, .n = n, .values = {}};
        for (int i = 0; i <= n; ++i) d.values.push_back(xi0_curve_function(i));
        return d;
    }
    if (name == "xi0-surface") {
        const auto grid = ValueGrid::sample(n, xi0_surface_function);
        return Dataset{.name = std::string(name),
                       .provenance = "e^-x^2 + 3e^-(y-1)^2 + e^-((x-6)^2+(y-6)^2) at x, y = 0..10",
                       .dimension = 2,
                       .n = n,
                       .values = {grid.values().begin(), grid.values().end()}};
    }
    throw Error(ErrorCode::unknown_dataset, "no built-in dataset named '" + std::string(name) + "'");
}

[[nodiscard]] inline std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

namespace detail {

[[nodiscard]] inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
}

[[nodiscard]] inline std::optional<double> parse_double(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

[[nodiscard]] inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

[[nodiscard]] inline int node_index(double v, std::size_t line_no) {
    if (v != std::floor(v) || v < 0.0 || v > 1e6) {
        throw Error(ErrorCode::non_uniform_nodes,
                    "line " + std::to_string(line_no) + ": node " + format_number(v) + " is not a non-negative integer");
    }
    return static_cast<int>(v);
}

}  // namespace detail

/// Parse CSV text; `source` names the origin in the dataset and messages.
[[nodiscard]] inline Dataset parse_points_csv_text(std::string_view text, const std::string& source = "<text>") {
    std::map<std::pair<int, int>, double> points;
    std::size_t columns = 0;
    bool seen_content = false;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto eol = text.find('\n', pos);
        const auto line = detail::trim(text.substr(pos, eol == std::string_view::npos ? text.npos : eol - pos));
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        if (line.empty() || line.front() == '#') continue;

        const auto fields = detail::split_fields(line);
        std::vector<double> numbers;
        for (auto f : fields) {
            if (auto v = detail::parse_double(f)) numbers.push_back(*v);
        }
        const bool numeric = numbers.size() == fields.size();
        const bool first = !seen_content;
        seen_content = true;
        if (first && numbers.empty()) continue;  // header
        if (!numeric || (fields.size() != 2 && fields.size() != 3)) {
            throw Error(ErrorCode::malformed_row, source + ":" + std::to_string(line_no) + ": expected 'i,value' or "
                                                           "'i,j,value', got '" + std::string(line) + "'");
        }
        if (columns == 0) columns = fields.size();
        if (fields.size() != columns) {
            throw Error(ErrorCode::malformed_row, source + ":" + std::to_string(line_no) + ": expected " +
                                                      std::to_string(columns) + " fields");
        }
        const int i = detail::node_index(numbers[0], line_no);
        const int j = columns == 3 ? detail::node_index(numbers[1], line_no) : 0;
        if (!points.emplace(std::pair{i, j}, numbers.back()).second) {
            throw Error(ErrorCode::duplicate_node, source + ":" + std::to_string(line_no) + ": node repeated");
        }
    }
    if (points.empty()) throw Error(ErrorCode::malformed_row, source + ": no data rows");

    Dataset d{.name = source, .provenance = "csv file", .dimension = columns == 3 ? 2 : 1, .n = 0, .values = {}};
    int n = 0;
    for (const auto& [key, value] : points) n = std::max({n, key.first, key.second});
    d.n = n;
    const auto side = static_cast<std::size_t>(n + 1);
    const std::size_t expected = d.dimension == 2 ? side * side : side;
    if (points.size() != expected) {
        throw Error(ErrorCode::non_uniform_nodes, source + ": nodes are not the consecutive integers 0.." +
                                                      std::to_string(n) + (d.dimension == 2 ? " in both directions" : ""));
    }
    d.values.reserve(expected);
    for (const auto& [key, value] : points) d.values.push_back(value);
    return d;
}

[[nodiscard]] inline Dataset parse_points_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::io_failure, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_points_csv_text(buf.str(), path);
}

enum class OutputFormat { csv, svg };

/// A sampled value at a 1-D or 2-D point.
struct Sample {
    std::vector<double> point;
    double value = 0.0;
};

[[nodiscard]] inline std::vector<Sample> dataset_samples(const Dataset& d) {
    std::vector<Sample> out;
    out.reserve(d.values.size());
    const auto side = static_cast<std::size_t>(d.n + 1);
    for (std::size_t k = 0; k < d.values.size(); ++k) {
        if (d.dimension == 2) {
            out.push_back({{double(k / side), double(k % side)}, d.values[k]});
        } else {
            out.push_back({{double(k)}, d.values[k]});
        }
    }
    return out;
}

inline void write_csv_rows(std::ostream& os, const std::vector<std::vector<double>>& rows) {
    for (const auto& row : rows) {
        for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << format_number(row[k]);
        os << '\n';
    }
}

inline void write_csv(std::ostream& os, std::span<const Sample> samples) {
    for (const auto& s : samples) {
        for (double p : s.point) os << format_number(p) << ',';
        os << format_number(s.value) << '\n';
    }
}

namespace detail {

struct Extent {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void include(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    [[nodiscard]] double map(double v, double out_lo, double out_hi) const {
        const double width = hi > lo ? hi - lo : 1.0;
        return out_lo + (v - lo) / width * (out_hi - out_lo);
    }
};

[[nodiscard]] inline std::string heat_colour(double s) {
    s = std::clamp(s, 0.0, 1.0);
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(255 * s), static_cast<int>(80 + 100 * (1 - std::abs(2 * s - 1))),
                  static_cast<int>(255 * (1 - s)));
    return buf;
}

}  // namespace detail

/// 800x600 SVG: a polyline for 1-D samples, a heatmap for 2-D samples;
/// `markers` (data nodes) are drawn as dots.
inline void write_svg(std::ostream& os, std::span<const Sample> samples, std::span<const Sample> markers = {}) {
    constexpr double left = 40, right = 760, top = 40, bottom = 560;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" viewBox=\"0 0 800 600\">\n"
       << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
    const bool surface = !samples.empty() && samples.front().point.size() == 2;
    if (!surface) {
        detail::Extent ex;
        detail::Extent ey;
        for (const auto& s : samples) {
            ex.include(s.point.at(0));
            ey.include(s.value);
        }
        for (const auto& m : markers) {
            ex.include(m.point.at(0));
            ey.include(m.value);
        }
        os << "<polyline fill=\"none\" stroke=\"#1f4fd1\" stroke-width=\"2\" points=\"";
        for (std::size_t k = 0; k < samples.size(); ++k) {
            os << (k ? " " : "") << format_number(ex.map(samples[k].point[0], left, right)) << ','
               << format_number(ey.map(samples[k].value, bottom, top));
        }
        os << "\"/>\n";
        for (const auto& m : markers) {
            os << "<circle cx=\"" << format_number(ex.map(m.point[0], left, right)) << "\" cy=\""
               << format_number(ey.map(m.value, bottom, top)) << "\" r=\"4\" fill=\"#d11f1f\"/>\n";
        }
    } else {
        detail::Extent eu;
        detail::Extent ev;
        detail::Extent ez;
        std::vector<double> us;
        std::vector<double> vs;
        for (const auto& s : samples) {
            eu.include(s.point[0]);
            ev.include(s.point[1]);
            ez.include(s.value);
            us.push_back(s.point[0]);
            vs.push_back(s.point[1]);
        }
        std::sort(us.begin(), us.end());
        std::sort(vs.begin(), vs.end());
        const auto nu = static_cast<double>(std::unique(us.begin(), us.end()) - us.begin());
        const auto nv = static_cast<double>(std::unique(vs.begin(), vs.end()) - vs.begin());
        const double cw = (right - left) / nu;
        const double ch = (bottom - top) / nv;
        for (const auto& s : samples) {
            const double cx = eu.map(s.point[0], left + cw / 2, right - cw / 2);
            const double cy = ev.map(s.point[1], bottom - ch / 2, top + ch / 2);
            os << "<rect x=\"" << format_number(cx - cw / 2) << "\" y=\"" << format_number(cy - ch / 2)
               << "\" width=\"" << format_number(cw) << "\" height=\"" << format_number(ch) << "\" fill=\""
               << detail::heat_colour(ez.map(s.value, 0.0, 1.0)) << "\"/>\n";
        }
        for (const auto& m : markers) {
            if (m.point.size() != 2 || m.point[0] < eu.lo || m.point[0] > eu.hi || m.point[1] < ev.lo ||
                m.point[1] > ev.hi) {
                continue;
            }
            os << "<circle cx=\"" << format_number(eu.map(m.point[0], left + cw / 2, right - cw / 2))
               << "\" cy=\"" << format_number(ev.map(m.point[1], bottom - ch / 2, top + ch / 2))
               << "\" r=\"3\" fill=\"black\"/>\n";
        }
    }
    os << "</svg>\n";
}

inline void write_samples(std::ostream& os, std::span<const Sample> samples, OutputFormat format,
                          std::span<const Sample> markers = {}) {
    if (samples.empty()) throw Error(ErrorCode::empty_samples, "nothing to emit");
    if (format == OutputFormat::csv) {
        write_csv(os, samples);
    } else {
        write_svg(os, samples, markers);
    }
}

/// Write samples to `path` as CSV or SVG.
inline void emit_samples(std::span<const Sample> samples, OutputFormat format, const std::string& path,
                         std::span<const Sample> markers = {}) {
    if (samples.empty()) throw Error(ErrorCode::empty_samples, "nothing to emit");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::io_failure, "cannot open " + path + " for writing");
    write_samples(out, samples, format, markers);
    out.flush();
    if (!out) throw Error(ErrorCode::io_failure, "write to " + path + " failed");
}

}  // namespace bsmls

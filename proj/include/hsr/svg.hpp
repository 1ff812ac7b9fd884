#pragma once
#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hsr/csv.hpp"

namespace hsr {

// One named polyline of an x/y chart.
struct ChartSeries {
    std::string label;
    std::string color;
    std::vector<std::pair<double, double>> points;
};

namespace detail {

inline std::string svg_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

inline std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

}  // namespace detail

/**
 * Minimal dependency-free SVG line chart: axes, ticks, legend, one polyline
 * per series. With log_y the y axis is log-scaled and non-positive points are
 * dropped (falling back to linear if nothing positive remains).
 */
inline void write_line_chart(std::ostream& out, const std::string& title, const std::string& x_label,
                             const std::string& y_label, std::span<const ChartSeries> series, bool log_y) {
    const double width = 800, height = 520;
    const double left = 80, right = 770, top = 50, bottom = 460;

    double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
    double y_min = x_min, y_max = -x_min;
    bool any_positive_y = false;
    for (const auto& s : series) {
        for (const auto& [x, y] : s.points) {
            x_min = std::min(x_min, x);
            x_max = std::max(x_max, x);
            if (y > 0.0) any_positive_y = true;
        }
    }
    const bool use_log = log_y && any_positive_y;
    for (const auto& s : series) {
        for (const auto& [x, y] : s.points) {
            if (use_log && y <= 0.0) continue;
            const double yv = use_log ? std::log10(y) : y;
            y_min = std::min(y_min, yv);
            y_max = std::max(y_max, yv);
        }
    }
    if (!(x_max > x_min)) { x_min -= 1.0; x_max += 1.0; }
    if (!(y_max > y_min)) { y_min -= 1.0; y_max += 1.0; }

    const auto x_pos = [&](double x) { return left + (x - x_min) / (x_max - x_min) * (right - left); };
    const auto y_pos = [&](double yv) { return bottom - (yv - y_min) / (y_max - y_min) * (bottom - top); };

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
        << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n"
        << "<text x=\"" << (width / 2) << "\" y=\"28\" text-anchor=\"middle\" font-size=\"18\">" << title
        << "</text>\n";

    // Axes.
    out << "<line x1=\"" << left << "\" y1=\"" << bottom << "\" x2=\"" << right << "\" y2=\"" << bottom
        << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << bottom
        << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << (left + right) / 2 << "\" y=\"500\" text-anchor=\"middle\" font-size=\"14\">" << x_label
        << "</text>\n"
        << "<text x=\"20\" y=\"" << (top + bottom) / 2 << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 20 "
        << (top + bottom) / 2 << ")\">" << y_label << (use_log ? " (log scale)" : "") << "</text>\n";

    // Ticks: 6 even x ticks, 6 even y ticks (decades stay readable in log mode
    // because labels render the underlying value).
    for (int i = 0; i <= 5; ++i) {
        const double fx = x_min + (x_max - x_min) * i / 5.0;
        const double px = x_pos(fx);
        out << "<line x1=\"" << detail::svg_num(px) << "\" y1=\"" << bottom << "\" x2=\"" << detail::svg_num(px)
            << "\" y2=\"" << bottom + 6 << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << detail::svg_num(px) << "\" y=\"" << bottom + 22
            << "\" text-anchor=\"middle\" font-size=\"12\">" << detail::tick_label(fx) << "</text>\n";
        const double fy = y_min + (y_max - y_min) * i / 5.0;
        const double py = y_pos(fy);
        out << "<line x1=\"" << left - 6 << "\" y1=\"" << detail::svg_num(py) << "\" x2=\"" << left << "\" y2=\""
            << detail::svg_num(py) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << left - 10 << "\" y=\"" << detail::svg_num(py + 4)
            << "\" text-anchor=\"end\" font-size=\"12\">" << detail::tick_label(use_log ? std::pow(10.0, fy) : fy)
            << "</text>\n";
    }

    // Series.
    for (const auto& s : series) {
        out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"2\" points=\"";
        bool first = true;
        for (const auto& [x, y] : s.points) {
            if (use_log && y <= 0.0) continue;
            const double yv = use_log ? std::log10(y) : y;
            if (!first) out << ' ';
            out << detail::svg_num(x_pos(x)) << ',' << detail::svg_num(y_pos(yv));
            first = false;
        }
        out << "\"/>\n";
    }

    // Legend.
    double ly = top + 10;
    for (const auto& s : series) {
        out << "<line x1=\"" << right - 140 << "\" y1=\"" << detail::svg_num(ly) << "\" x2=\"" << right - 110
            << "\" y2=\"" << detail::svg_num(ly) << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << right - 104 << "\" y=\"" << detail::svg_num(ly + 4) << "\" font-size=\"13\">"
            << s.label << "</text>\n";
        ly += 20;
    }
    out << "</svg>\n";
}

}  // namespace hsr

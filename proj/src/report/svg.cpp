#include "report/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "core/errors.hpp"
#include "core/text.hpp"

namespace heartml::report {

using heartml::core::format_fixed;
using heartml::core::ValidationError;

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 30.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 70.0;

const char* kPalette[] = {"#4878d0", "#ee854a", "#6acc64", "#d65f5f",
                          "#956cb4", "#8c613c", "#dc7ec0", "#797979"};

std::string xml_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

struct ValueRange {
    double lo = 0.0;
    double hi = 1.0;
};

ValueRange padded_range(const std::vector<double>& values, bool from_zero) {
    ValueRange range;
    range.lo = *std::min_element(values.begin(), values.end());
    range.hi = *std::max_element(values.begin(), values.end());
    if (from_zero && range.lo > 0.0) range.lo = 0.0;
    if (range.hi == range.lo) {
        range.hi += 1.0;
        range.lo -= 1.0;
    }
    const double pad = (range.hi - range.lo) * 0.08;
    if (!from_zero || range.lo != 0.0) range.lo -= pad;
    range.hi += pad;
    return range;
}

void open_svg(std::ostringstream& out, const std::string& title) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight
        << "\">\n";
    out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2.0
        << "\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"17\" fill=\"#222\">"
        << xml_escape(title) << "</text>\n";
}

void draw_axes(std::ostringstream& out, const ValueRange& range,
               const std::string& y_label) {
    const double plot_h = kHeight - kTop - kBottom;
    out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft
        << "\" y2=\"" << kHeight - kBottom << "\" stroke=\"#444\"/>\n";
    out << "<line x1=\"" << kLeft << "\" y1=\"" << kHeight - kBottom << "\" x2=\""
        << kWidth - kRight << "\" y2=\"" << kHeight - kBottom << "\" stroke=\"#444\"/>\n";
    for (int tick = 0; tick <= 4; ++tick) {
        const double frac = static_cast<double>(tick) / 4.0;
        const double value = range.lo + frac * (range.hi - range.lo);
        const double y = kHeight - kBottom - frac * plot_h;
        out << "<line x1=\"" << kLeft - 4 << "\" y1=\"" << format_fixed(y, 2)
            << "\" x2=\"" << kWidth - kRight << "\" y2=\"" << format_fixed(y, 2)
            << "\" stroke=\"#ddd\"/>\n";
        out << "<text x=\"" << kLeft - 8 << "\" y=\"" << format_fixed(y + 4.0, 2)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" "
               "fill=\"#444\">"
            << format_fixed(value, 2) << "</text>\n";
    }
    out << "<text x=\"18\" y=\"" << kTop + plot_h / 2.0
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
           "fill=\"#222\" transform=\"rotate(-90 18 "
        << kTop + plot_h / 2.0 << ")\">" << xml_escape(y_label) << "</text>\n";
}

} // namespace

std::string svg_bar_chart(const std::vector<std::string>& labels,
                          const std::vector<double>& values, const std::string& title,
                          const std::string& y_label) {
    if (labels.empty() || labels.size() != values.size()) {
        throw ValidationError("svg_bar_chart: labels and values must align");
    }
    const ValueRange range = padded_range(values, true);
    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    const double slot = plot_w / static_cast<double>(values.size());
    const double bar_w = slot * 0.64;

    std::ostringstream out;
    open_svg(out, title);
    draw_axes(out, range, y_label);
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double frac = (values[i] - range.lo) / (range.hi - range.lo);
        const double h = std::max(0.0, frac * plot_h);
        const double x = kLeft + slot * static_cast<double>(i) + (slot - bar_w) / 2.0;
        const double y = kHeight - kBottom - h;
        const char* color = kPalette[i % (sizeof(kPalette) / sizeof(kPalette[0]))];
        out << "<rect x=\"" << format_fixed(x, 2) << "\" y=\"" << format_fixed(y, 2)
            << "\" width=\"" << format_fixed(bar_w, 2) << "\" height=\""
            << format_fixed(h, 2) << "\" fill=\"" << color << "\"/>\n";
        out << "<text x=\"" << format_fixed(x + bar_w / 2.0, 2) << "\" y=\""
            << format_fixed(y - 5.0, 2)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\" "
               "fill=\"#222\">"
            << format_fixed(values[i], 2) << "</text>\n";
        const double lx = kLeft + slot * static_cast<double>(i) + slot / 2.0;
        const double ly = kHeight - kBottom + 14.0;
        out << "<text x=\"" << format_fixed(lx, 2) << "\" y=\"" << format_fixed(ly, 2)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" "
               "fill=\"#222\" transform=\"rotate(-30 "
            << format_fixed(lx, 2) << " " << format_fixed(ly, 2) << ")\">"
            << xml_escape(labels[i]) << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string svg_line_chart(const std::vector<double>& xs,
                           const std::vector<Series>& series, const std::string& title,
                           const std::string& x_label, const std::string& y_label) {
    if (xs.empty() || series.empty()) {
        throw ValidationError("svg_line_chart: need x values and at least one series");
    }
    std::vector<double> all;
    for (const Series& s : series) {
        if (s.ys.size() != xs.size()) {
            throw ValidationError("svg_line_chart: series '" + s.name +
                                  "' length does not match x values");
        }
        all.insert(all.end(), s.ys.begin(), s.ys.end());
    }
    const ValueRange range = padded_range(all, false);
    const double x_lo = *std::min_element(xs.begin(), xs.end());
    const double x_hi = *std::max_element(xs.begin(), xs.end());
    const double x_span = x_hi == x_lo ? 1.0 : x_hi - x_lo;
    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;

    auto x_pos = [&](double x) { return kLeft + (x - x_lo) / x_span * plot_w; };
    auto y_pos = [&](double y) {
        return kHeight - kBottom - (y - range.lo) / (range.hi - range.lo) * plot_h;
    };

    std::ostringstream out;
    open_svg(out, title);
    draw_axes(out, range, y_label);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double x = x_pos(xs[i]);
        out << "<text x=\"" << format_fixed(x, 2) << "\" y=\""
            << format_fixed(kHeight - kBottom + 16.0, 2)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\" "
               "fill=\"#444\">"
            << core::format_double(xs[i]) << "</text>\n";
    }
    out << "<text x=\"" << kLeft + plot_w / 2.0 << "\" y=\"" << kHeight - 18.0
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
           "fill=\"#222\">"
        << xml_escape(x_label) << "</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (i) out << " ";
            out << format_fixed(x_pos(xs[i]), 2) << "," << format_fixed(y_pos(series[s].ys[i]), 2);
        }
        out << "\"/>\n";
        for (std::size_t i = 0; i < xs.size(); ++i) {
            out << "<circle cx=\"" << format_fixed(x_pos(xs[i]), 2) << "\" cy=\""
                << format_fixed(y_pos(series[s].ys[i]), 2) << "\" r=\"3\" fill=\"" << color
                << "\"/>\n";
        }
        out << "<text x=\"" << kWidth - kRight - 6.0 << "\" y=\""
            << format_fixed(kTop + 16.0 * static_cast<double>(s) + 12.0, 2)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" fill=\""
            << color << "\">" << xml_escape(series[s].name) << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace heartml::report

#include "vlp/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string_view>

namespace vlp {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::string escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

SvgLinePlot::SvgLinePlot(std::string title, std::string x_label, std::string y_label, bool log_y)
    : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)),
      log_y_(log_y) {}

std::string SvgLinePlot::render(int width, int height) const {
    const double left = 80, right = 200, top = 40, bottom = 60;
    const double pw = width - left - right;
    const double ph = height - top - bottom;

    auto ty = [this](double y) { return log_y_ ? std::log10(y) : y; };
    auto usable = [this](double y) { return std::isfinite(y) && (!log_y_ || y > 0.0); };

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : series_) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !usable(s.y[i])) continue;
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, ty(s.y[i]));
            ymax = std::max(ymax, ty(s.y[i]));
        }
    }
    if (!std::isfinite(xmin)) xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    if (xmax == xmin) xmax = xmin + 1.0;
    if (log_y_) {
        ymin = std::floor(ymin);
        ymax = std::ceil(ymax);
    }
    if (ymax == ymin) ymax = ymin + 1.0;

    auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double y) { return top + (1.0 - (ty(y) - ymin) / (ymax - ymin)) * ph; };

    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
                      "\" height=\"" + std::to_string(height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + fmt(left + pw / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" +
           escape(title_) + "</text>\n";
    svg += "<rect x=\"" + fmt(left) + "\" y=\"" + fmt(top) + "\" width=\"" + fmt(pw) + "\" height=\"" +
           fmt(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";

    // Y ticks: decades on a log axis, five even steps otherwise.
    const int ny = log_y_ ? static_cast<int>(ymax - ymin) : 5;
    for (int k = 0; k <= ny; ++k) {
        const double v = ymin + (ymax - ymin) * k / ny;
        const double y = top + (1.0 - double(k) / ny) * ph;
        svg += "<line x1=\"" + fmt(left) + "\" x2=\"" + fmt(left + pw) + "\" y1=\"" + fmt(y) +
               "\" y2=\"" + fmt(y) + "\" stroke=\"#ddd\"/>\n";
        svg += "<text x=\"" + fmt(left - 6) + "\" y=\"" + fmt(y + 4) + "\" text-anchor=\"end\">" +
               (log_y_ ? "1e" + std::to_string(static_cast<int>(std::lround(v))) : tick(v)) + "</text>\n";
    }
    for (int k = 0; k <= 5; ++k) {
        const double v = xmin + (xmax - xmin) * k / 5;
        svg += "<text x=\"" + fmt(px(v)) + "\" y=\"" + fmt(top + ph + 18) +
               "\" text-anchor=\"middle\">" + tick(v) + "</text>\n";
    }
    svg += "<text x=\"" + fmt(left + pw / 2) + "\" y=\"" + fmt(height - 16.0) +
           "\" text-anchor=\"middle\">" + escape(x_label_) + "</text>\n";
    svg += "<text transform=\"translate(18," + fmt(top + ph / 2) +
           ") rotate(-90)\" text-anchor=\"middle\">" + escape(y_label_) + "</text>\n";

    for (std::size_t s = 0; s < series_.size(); ++s) {
        const auto& ser = series_[s];
        const char* color = kPalette[s % std::size(kPalette)];
        std::string points;
        for (std::size_t i = 0; i < ser.x.size(); ++i) {
            if (!std::isfinite(ser.x[i]) || !usable(ser.y[i])) continue;
            points += fmt(px(ser.x[i])) + "," + fmt(py(ser.y[i])) + " ";
        }
        svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\"" +
               (ser.dashed ? " stroke-dasharray=\"6,4\"" : "") + " points=\"" + points + "\"/>\n";
        const double ly = top + 14.0 + 18.0 * s;
        svg += "<line x1=\"" + fmt(left + pw + 12) + "\" x2=\"" + fmt(left + pw + 40) + "\" y1=\"" +
               fmt(ly) + "\" y2=\"" + fmt(ly) + "\" stroke=\"" + color + "\" stroke-width=\"1.5\"" +
               (ser.dashed ? " stroke-dasharray=\"6,4\"" : "") + "/>\n";
        svg += "<text x=\"" + fmt(left + pw + 46) + "\" y=\"" + fmt(ly + 4) + "\">" +
               escape(ser.label) + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace vlp

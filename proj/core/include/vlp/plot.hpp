#pragma once

#include <string>
#include <vector>

namespace vlp {

/// Minimal SVG line chart with an optional log10 y axis.
class SvgLinePlot {
public:
    struct Series {
        std::string label;
        std::vector<double> x;
        std::vector<double> y;
        bool dashed = false;
    };

    SvgLinePlot(std::string title, std::string x_label, std::string y_label, bool log_y = true);

    void add_series(Series series) { series_.push_back(std::move(series)); }
    std::string render(int width = 720, int height = 480) const;

private:
    std::string title_;
    std::string x_label_;
    std::string y_label_;
    bool log_y_;
    std::vector<Series> series_;
};

}  // namespace vlp

#pragma once

#include <string>
#include <utility>
#include <vector>

namespace latnet::svg {

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;
    std::string color = "#1f6fb2";
    bool dashed = false;
    bool markers = false;
};

struct Chart {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
    std::vector<Series> series;
};

/// Minimal static chart: axes, ticks, legend, polyline/marker series.
/// Output contains no timestamps so repeated renders are byte-identical.
std::string render(const Chart& chart);
void write(const std::string& path, const Chart& chart);

} // namespace latnet::svg

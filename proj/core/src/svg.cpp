#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace latnet::svg {

namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct Axis {
    double lo = 0, hi = 1;
    bool log = false;

    double place(double v, double pix_lo, double pix_hi) const {
        double x = log ? std::log10(v) : v;
        double a = log ? std::log10(lo) : lo;
        double b = log ? std::log10(hi) : hi;
        if (b <= a) b = a + 1;
        return pix_lo + (x - a) / (b - a) * (pix_hi - pix_lo);
    }

    std::vector<double> ticks() const {
        std::vector<double> out;
        if (log) {
            const int e0 = static_cast<int>(std::floor(std::log10(lo)));
            const int e1 = static_cast<int>(std::ceil(std::log10(hi)));
            for (int e = e0; e <= e1; ++e) out.push_back(std::pow(10.0, e));
        } else {
            const double span = hi - lo;
            const double raw = span / 5.0;
            const double mag = std::pow(10.0, std::floor(std::log10(raw)));
            double step = mag;
            for (double m : {1.0, 2.0, 5.0, 10.0}) {
                if (raw <= m * mag) {
                    step = m * mag;
                    break;
                }
            }
            for (double t = std::ceil(lo / step) * step; t <= hi + step * 1e-9; t += step)
                out.push_back(t);
        }
        return out;
    }
};

} // namespace

std::string render(const Chart& chart) {
    double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
    double y_lo = x_lo, y_hi = -x_lo;
    for (const auto& s : chart.series) {
        for (const auto& [x, y] : s.points) {
            if (chart.log_x && x <= 0.0) continue;
            if (chart.log_y && y <= 0.0) continue;
            x_lo = std::min(x_lo, x);
            x_hi = std::max(x_hi, x);
            y_lo = std::min(y_lo, y);
            y_hi = std::max(y_hi, y);
        }
    }
    if (!(x_lo <= x_hi)) {
        x_lo = chart.log_x ? 1 : 0;
        x_hi = chart.log_x ? 10 : 1;
    }
    if (!(y_lo <= y_hi)) {
        y_lo = chart.log_y ? 1 : 0;
        y_hi = chart.log_y ? 10 : 1;
    }
    if (!chart.log_x && x_hi == x_lo) x_hi = x_lo + 1;
    if (!chart.log_y && y_hi == y_lo) y_hi = y_lo + 1;
    if (!chart.log_y) {
        const double pad = 0.05 * (y_hi - y_lo);
        y_lo = std::min(y_lo, y_lo - pad);
        y_hi += pad;
    }

    const Axis xa{x_lo, x_hi, chart.log_x};
    const Axis ya{y_lo, y_hi, chart.log_y};
    const auto px = [&](double v) { return xa.place(v, kLeft, kWidth - kRight); };
    const auto py = [&](double v) { return ya.place(v, kHeight - kBottom, kTop); };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"20\" font-size=\"14\" text-anchor=\"middle\">"
        << chart.title << "</text>\n";

    for (double t : xa.ticks()) {
        if (t < x_lo - 1e-12 || t > x_hi * (1 + 1e-12) + 1e-12) continue;
        const double x = px(t);
        out << "<line x1=\"" << num(x) << "\" y1=\"" << kTop << "\" x2=\"" << num(x) << "\" y2=\""
            << kHeight - kBottom << "\" stroke=\"#e0e0e0\"/>\n";
        out << "<text x=\"" << num(x) << "\" y=\"" << kHeight - kBottom + 16
            << "\" font-size=\"10\" text-anchor=\"middle\">" << num(t) << "</text>\n";
    }
    for (double t : ya.ticks()) {
        if (t < y_lo - 1e-12 || t > y_hi * (1 + 1e-12) + 1e-12) continue;
        const double y = py(t);
        out << "<line x1=\"" << kLeft << "\" y1=\"" << num(y) << "\" x2=\"" << kWidth - kRight
            << "\" y2=\"" << num(y) << "\" stroke=\"#e0e0e0\"/>\n";
        out << "<text x=\"" << kLeft - 6 << "\" y=\"" << num(y + 3)
            << "\" font-size=\"10\" text-anchor=\"end\">" << num(t) << "</text>\n";
    }
    out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kWidth - kLeft - kRight
        << "\" height=\"" << kHeight - kTop - kBottom
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<text x=\"" << (kLeft + kWidth - kRight) / 2 << "\" y=\"" << kHeight - 14
        << "\" font-size=\"12\" text-anchor=\"middle\">" << chart.x_label << "</text>\n";
    out << "<text x=\"16\" y=\"" << (kTop + kHeight - kBottom) / 2
        << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << (kTop + kHeight - kBottom) / 2 << ")\">" << chart.y_label << "</text>\n";

    double legend_y = kTop + 14;
    for (const auto& s : chart.series) {
        std::ostringstream pts;
        bool any = false;
        for (const auto& [x, y] : s.points) {
            if (chart.log_x && x <= 0.0) continue;
            if (chart.log_y && y <= 0.0) continue;
            pts << num(px(x)) << ',' << num(py(y)) << ' ';
            any = true;
        }
        if (any && s.points.size() > 1) {
            out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\"";
            if (s.dashed) out << " stroke-dasharray=\"6,4\"";
            out << " points=\"" << pts.str() << "\"/>\n";
        }
        if (s.markers) {
            for (const auto& [x, y] : s.points) {
                if (chart.log_x && x <= 0.0) continue;
                if (chart.log_y && y <= 0.0) continue;
                out << "<circle cx=\"" << num(px(x)) << "\" cy=\"" << num(py(y))
                    << "\" r=\"2.5\" fill=\"" << s.color << "\"/>\n";
            }
        }
        if (!s.label.empty()) {
            out << "<line x1=\"" << kWidth - kRight - 130 << "\" y1=\"" << legend_y - 4
                << "\" x2=\"" << kWidth - kRight - 106 << "\" y2=\"" << legend_y - 4
                << "\" stroke=\"" << s.color << "\" stroke-width=\"1.5\"";
            if (s.dashed) out << " stroke-dasharray=\"6,4\"";
            out << "/>\n";
            out << "<text x=\"" << kWidth - kRight - 100 << "\" y=\"" << legend_y
                << "\" font-size=\"11\">" << s.label << "</text>\n";
            legend_y += 16;
        }
    }
    out << "</svg>\n";
    return out.str();
}

void write(const std::string& path, const Chart& chart) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << render(chart);
}

} // namespace latnet::svg

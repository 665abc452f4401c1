#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace fockpulse {

namespace {

constexpr int kWidth = 880;
constexpr int kPanelHeight = 320;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 150;
constexpr int kMarginTop = 42;
constexpr int kMarginBottom = 48;
constexpr size_t kMaxPointsPerSeries = 2000;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void grow(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (!(lo < hi)) {
            lo -= 1.0;
            hi += 1.0;
        } else {
            const double m = 0.05 * (hi - lo);
            lo -= m;
            hi += m;
        }
    }
};

} // namespace

std::string render_svg(const std::string& title, const std::string& x_label,
                       const std::vector<SvgPanel>& panels) {
    const int height = kMarginTop + kMarginBottom +
                       kPanelHeight * static_cast<int>(panels.size());
    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(kWidth) +
         "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " +
         std::to_string(kWidth) + " " + std::to_string(height) + "\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s += "<text x=\"" + std::to_string(kWidth / 2) +
         "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
         title + "</text>\n";

    Range xr;
    for (const auto& panel : panels) {
        for (const auto& series : panel.series) {
            for (const double v : series.x) xr.grow(v);
        }
    }
    xr.pad();

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    for (size_t pi = 0; pi < panels.size(); ++pi) {
        const auto& panel = panels[pi];
        const double top = kMarginTop + pi * kPanelHeight + 12;
        const double plot_h = kPanelHeight - 46;

        Range yr;
        for (const auto& series : panel.series) {
            for (const double v : series.y) yr.grow(v);
        }
        yr.pad();

        const auto px = [&](double x) {
            return kMarginLeft + (x - xr.lo) / (xr.hi - xr.lo) * plot_w;
        };
        const auto py = [&](double y) {
            return top + plot_h - (y - yr.lo) / (yr.hi - yr.lo) * plot_h;
        };

        s += "<rect x=\"" + num(kMarginLeft) + "\" y=\"" + num(top) + "\" width=\"" +
             num(plot_w) + "\" height=\"" + num(plot_h) +
             "\" fill=\"none\" stroke=\"#444\"/>\n";

        for (int tick = 0; tick <= 5; ++tick) {
            const double xv = xr.lo + (xr.hi - xr.lo) * tick / 5.0;
            const double yv = yr.lo + (yr.hi - yr.lo) * tick / 5.0;
            s += "<line x1=\"" + num(px(xv)) + "\" y1=\"" + num(top + plot_h) + "\" x2=\"" +
                 num(px(xv)) + "\" y2=\"" + num(top + plot_h + 5) + "\" stroke=\"#444\"/>\n";
            s += "<text x=\"" + num(px(xv)) + "\" y=\"" + num(top + plot_h + 18) +
                 "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
                 num(xv) + "</text>\n";
            s += "<line x1=\"" + num(kMarginLeft - 5.0) + "\" y1=\"" + num(py(yv)) +
                 "\" x2=\"" + num(kMarginLeft) + "\" y2=\"" + num(py(yv)) +
                 "\" stroke=\"#444\"/>\n";
            s += "<text x=\"" + num(kMarginLeft - 8.0) + "\" y=\"" + num(py(yv) + 4) +
                 "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
                 num(yv) + "</text>\n";
        }
        s += "<text x=\"18\" y=\"" + num(top + plot_h / 2) +
             "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
             "transform=\"rotate(-90 18 " +
             num(top + plot_h / 2) + ")\">" + panel.y_label + "</text>\n";

        double legend_y = top + 14;
        for (const auto& series : panel.series) {
            const size_t n = series.x.size();
            const size_t stride = std::max<size_t>(1, n / kMaxPointsPerSeries);
            std::string pts;
            for (size_t i = 0; i < n; i += stride) {
                pts += num(px(series.x[i])) + "," + num(py(series.y[i])) + " ";
            }
            if (n > 0 && (n - 1) % stride != 0) {
                pts += num(px(series.x[n - 1])) + "," + num(py(series.y[n - 1]));
            }
            s += "<polyline fill=\"none\" stroke=\"" + series.color + "\" stroke-width=\"1.5\"";
            if (series.dashed) s += " stroke-dasharray=\"5,4\"";
            s += " points=\"" + pts + "\"/>\n";

            const double lx = kWidth - kMarginRight + 10;
            s += "<line x1=\"" + num(lx) + "\" y1=\"" + num(legend_y) + "\" x2=\"" +
                 num(lx + 22) + "\" y2=\"" + num(legend_y) + "\" stroke=\"" + series.color +
                 "\" stroke-width=\"2\"" +
                 (series.dashed ? " stroke-dasharray=\"5,4\"" : "") + "/>\n";
            s += "<text x=\"" + num(lx + 28) + "\" y=\"" + num(legend_y + 4) +
                 "\" font-family=\"sans-serif\" font-size=\"12\">" + series.label +
                 "</text>\n";
            legend_y += 18;
        }
    }

    s += "<text x=\"" + std::to_string(kMarginLeft + static_cast<int>(plot_w) / 2) +
         "\" y=\"" + std::to_string(height - 12) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" + x_label +
         "</text>\n";
    s += "</svg>\n";
    return s;
}

} // namespace fockpulse

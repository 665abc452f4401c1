#pragma once

#include <string>
#include <vector>

namespace fockpulse {

// Minimal self-contained line-plot SVG, used for the regression figures.
struct SvgSeries {
    std::string label;
    std::string color = "#1f6fb2";
    bool dashed = false;
    std::vector<double> x;
    std::vector<double> y;
};

struct SvgPanel {
    std::string y_label;
    std::vector<SvgSeries> series;
};

std::string render_svg(const std::string& title, const std::string& x_label,
                       const std::vector<SvgPanel>& panels);

} // namespace fockpulse

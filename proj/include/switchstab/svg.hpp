#pragma once

#include <string>
#include <vector>

namespace switchstab {

struct SvgSeries {
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#1f6fb5";
};

/// Minimal SVG 1.1 polyline chart with axes, ticks, and labels. No external
/// plotting dependency; output is plain text.
void write_svg_plot(const std::string& path, const std::vector<SvgSeries>& series,
                    const std::string& title, const std::string& x_label,
                    const std::string& y_label, bool equal_aspect = false);

} // namespace switchstab

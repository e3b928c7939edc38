#pragma once

#include <string>
#include <utility>
#include <vector>

namespace lambdisp {

struct SvgSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

/// Minimal static line plot: axes, tick labels, legend, one polyline per
/// series. Intended for offline visual comparison, not publication.
void write_svg_plot(const std::string& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<SvgSeries>& series);

}  // namespace lambdisp

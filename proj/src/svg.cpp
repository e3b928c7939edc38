#include "lambdisp/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace lambdisp {

namespace {

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                         "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(4) << v;
    return os.str();
}

}  // namespace

void write_svg_plot(const std::string& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<SvgSeries>& series) {
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0;
    double y0 = x0, y1 = -x0;
    for (const auto& s : series)
        for (const auto& [x, y] : s.points) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            x0 = std::min(x0, x);
            x1 = std::max(x1, x);
            y0 = std::min(y0, y);
            y1 = std::max(y1, y);
        }
    if (!(x1 >= x0) || !(y1 >= y0))
        throw std::invalid_argument("write_svg_plot: no finite points");
    if (x1 == x0) x1 = x0 + 1.0;
    if (y1 == y0) {
        y0 -= 1.0;
        y1 += 1.0;
    }
    const double W = 760, H = 520, ml = 80, mr = 20, mt = 40, mb = 60;
    auto px = [&](double x) {
        return ml + (x - x0) / (x1 - x0) * (W - ml - mr);
    };
    auto py = [&](double y) {
        return H - mb - (y - y0) / (y1 - y0) * (H - mt - mb);
    };

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << std::setprecision(8);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
        << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << ' ' << H
        << "\">\n";
    out << "<rect width=\"" << W << "\" height=\"" << H
        << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" "
           "font-size=\"16\">"
        << title << "</text>\n";

    // axes box + ticks
    out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\""
        << W - ml - mr << "\" height=\"" << H - mt - mb
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    const int nticks = 5;
    for (int i = 0; i <= nticks; ++i) {
        const double xv = x0 + (x1 - x0) * i / nticks;
        const double yv = y0 + (y1 - y0) * i / nticks;
        out << "<line x1=\"" << px(xv) << "\" y1=\"" << H - mb << "\" x2=\""
            << px(xv) << "\" y2=\"" << H - mb + 5
            << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << px(xv) << "\" y=\"" << H - mb + 20
            << "\" text-anchor=\"middle\" font-size=\"11\">" << fmt(xv)
            << "</text>\n";
        out << "<line x1=\"" << ml - 5 << "\" y1=\"" << py(yv) << "\" x2=\""
            << ml << "\" y2=\"" << py(yv) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << ml - 8 << "\" y=\"" << py(yv) + 4
            << "\" text-anchor=\"end\" font-size=\"11\">" << fmt(yv)
            << "</text>\n";
    }
    out << "<text x=\"" << W / 2 << "\" y=\"" << H - 15
        << "\" text-anchor=\"middle\" font-size=\"13\">" << x_label
        << "</text>\n";
    out << "<text x=\"20\" y=\"" << H / 2
        << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 "
           "20 "
        << H / 2 << ")\">" << y_label << "</text>\n";
    if (y0 < 0.0 && y1 > 0.0)
        out << "<line x1=\"" << ml << "\" y1=\"" << py(0.0) << "\" x2=\""
            << W - mr << "\" y2=\"" << py(0.0)
            << "\" stroke=\"#bbbbbb\" stroke-dasharray=\"4 3\"/>\n";

    for (size_t s = 0; s < series.size(); ++s) {
        const char* color = kColors[s % (sizeof(kColors) / sizeof(*kColors))];
        out << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [x, y] : series[s].points)
            if (std::isfinite(x) && std::isfinite(y))
                out << px(x) << ',' << py(y) << ' ';
        out << "\"/>\n";
        out << "<text x=\"" << W - mr - 10 << "\" y=\"" << mt + 18 + 16 * s
            << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << color
            << "\">" << series[s].label << "</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace lambdisp

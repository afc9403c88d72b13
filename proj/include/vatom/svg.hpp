#pragma once

// Minimal static SVG line charts: axes, ticks, legend, one polyline per
// series. Non-finite samples are skipped (the polyline breaks there).

#include <string>
#include <vector>

namespace vatom {

struct SvgSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

void write_line_chart(const std::string& path, const std::string& title,
                      const std::string& xlabel, const std::string& ylabel,
                      const std::vector<SvgSeries>& series);

} // namespace vatom

// svg.hpp — Minimal self-contained SVG line charts (axes, ticks, legend).

#pragma once

#include <string>
#include <vector>

namespace starkcav::scan {

struct Curve {
    std::string label;
    std::string color;  // CSS color
    std::vector<double> x;
    std::vector<double> y;
};

struct ChartSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    int width = 800;
    int height = 500;
};

// Renders the curves into one SVG document. Axis ranges come from the data
// (y padded to a round range starting at 0 when all values are nonnegative).
// Output is deterministic.
std::string render_line_chart(const ChartSpec& spec,
                              const std::vector<Curve>& curves);

}  // namespace starkcav::scan

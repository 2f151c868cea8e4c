#include "starkcav/svg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace starkcav::scan {
namespace {

// Locale-independent short float formatting.
std::string fmt(double v, int precision = 6) {
    char buf[64];
    auto [ptr, ec] =
        std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general,
                      precision);
    return std::string(buf, ptr);
}

}  // namespace

std::string render_line_chart(const ChartSpec& spec,
                              const std::vector<Curve>& curves) {
    const double ml = 70.0, mr = 170.0, mt = 40.0, mb = 55.0;
    const double pw = spec.width - ml - mr;   // plot width
    const double ph = spec.height - mt - mb;  // plot height

    double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
    bool first = true;
    for (const auto& c : curves) {
        for (size_t i = 0; i < c.x.size(); ++i) {
            if (first) {
                xmin = xmax = c.x[i];
                ymin = ymax = c.y[i];
                first = false;
            }
            xmin = std::min(xmin, c.x[i]);
            xmax = std::max(xmax, c.x[i]);
            ymin = std::min(ymin, c.y[i]);
            ymax = std::max(ymax, c.y[i]);
        }
    }
    if (ymin >= 0.0) ymin = 0.0;
    if (ymax <= ymin) ymax = ymin + 1.0;
    if (xmax <= xmin) xmax = xmin + 1.0;
    ymax *= 1.05;

    const auto px = [&](double x) {
        return ml + (x - xmin) / (xmax - xmin) * pw;
    };
    const auto py = [&](double y) {
        return mt + ph - (y - ymin) / (ymax - ymin) * ph;
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width
        << "\" height=\"" << spec.height << "\" viewBox=\"0 0 " << spec.width
        << ' ' << spec.height << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << fmt(ml + pw / 2) << "\" y=\"24\" font-size=\"16\" "
           "text-anchor=\"middle\" font-family=\"sans-serif\">"
        << spec.title << "</text>\n";

    // Axes.
    svg << "<line x1=\"" << fmt(ml) << "\" y1=\"" << fmt(mt + ph)
        << "\" x2=\"" << fmt(ml + pw) << "\" y2=\"" << fmt(mt + ph)
        << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << fmt(ml) << "\" y1=\"" << fmt(mt) << "\" x2=\""
        << fmt(ml) << "\" y2=\"" << fmt(mt + ph) << "\" stroke=\"black\"/>\n";

    const int ticks = 5;
    for (int i = 0; i <= ticks; ++i) {
        const double xv = xmin + (xmax - xmin) * i / ticks;
        const double yv = ymin + (ymax - ymin) * i / ticks;
        svg << "<line x1=\"" << fmt(px(xv)) << "\" y1=\"" << fmt(mt + ph)
            << "\" x2=\"" << fmt(px(xv)) << "\" y2=\"" << fmt(mt + ph + 5)
            << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << fmt(px(xv)) << "\" y=\"" << fmt(mt + ph + 20)
            << "\" font-size=\"11\" text-anchor=\"middle\" "
               "font-family=\"sans-serif\">"
            << fmt(xv, 4) << "</text>\n";
        svg << "<line x1=\"" << fmt(ml - 5) << "\" y1=\"" << fmt(py(yv))
            << "\" x2=\"" << fmt(ml) << "\" y2=\"" << fmt(py(yv))
            << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << fmt(ml - 9) << "\" y=\"" << fmt(py(yv) + 4)
            << "\" font-size=\"11\" text-anchor=\"end\" "
               "font-family=\"sans-serif\">"
            << fmt(yv, 4) << "</text>\n";
    }

    svg << "<text x=\"" << fmt(ml + pw / 2) << "\" y=\""
        << fmt(spec.height - 12.0)
        << "\" font-size=\"13\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\">"
        << spec.x_label << "</text>\n";
    svg << "<text x=\"18\" y=\"" << fmt(mt + ph / 2)
        << "\" font-size=\"13\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" transform=\"rotate(-90 18 "
        << fmt(mt + ph / 2) << ")\">" << spec.y_label << "</text>\n";

    // Curves (gaps where y is NaN).
    for (const auto& c : curves) {
        svg << "<polyline fill=\"none\" stroke=\"" << c.color
            << "\" stroke-width=\"1.5\" points=\"";
        for (size_t i = 0; i < c.x.size(); ++i) {
            if (!std::isfinite(c.y[i])) continue;
            svg << fmt(px(c.x[i])) << ',' << fmt(py(c.y[i])) << ' ';
        }
        svg << "\"/>\n";
    }

    // Legend.
    double ly = mt + 10.0;
    for (const auto& c : curves) {
        svg << "<line x1=\"" << fmt(ml + pw + 12) << "\" y1=\"" << fmt(ly)
            << "\" x2=\"" << fmt(ml + pw + 40) << "\" y2=\"" << fmt(ly)
            << "\" stroke=\"" << c.color << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << fmt(ml + pw + 46) << "\" y=\"" << fmt(ly + 4)
            << "\" font-size=\"12\" font-family=\"sans-serif\">" << c.label
            << "</text>\n";
        ly += 20.0;
    }

    svg << "</svg>\n";
    return svg.str();
}

}  // namespace starkcav::scan

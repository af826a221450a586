#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "covrp/model.hpp"

// Minimal scatter-plot writer for Pareto fronts. Pixel positions are computed
// in integer arithmetic, so a given front renders to byte-identical SVG on
// every platform.

namespace covrp::svg {

struct Series {
    std::vector<std::pair<Cost, Cost>> points;  // (f1, f2)
    std::string label;
};

namespace detail {

constexpr int kWidth = 640, kHeight = 480;
constexpr int kLeft = 80, kRight = 24, kTop = 40, kBottom = 56;
constexpr int kPlotW = kWidth - kLeft - kRight;
constexpr int kPlotH = kHeight - kTop - kBottom;

inline int map_x(Cost v, Cost lo, Cost hi) {
    if (hi == lo) return kLeft + kPlotW / 2;
    return kLeft + static_cast<int>((v - lo) * kPlotW / (hi - lo));
}

inline int map_y(Cost v, Cost lo, Cost hi) {
    if (hi == lo) return kTop + kPlotH / 2;
    return kTop + kPlotH - static_cast<int>((v - lo) * kPlotH / (hi - lo));
}

inline void draw_series(std::ostringstream& out, const Series& s, Cost x0, Cost x1, Cost y0,
                        Cost y1, bool secondary) {
    auto pts = s.points;
    std::sort(pts.begin(), pts.end());
    if (pts.size() > 1) {
        out << "  <polyline fill=\"none\" stroke=\""
            << (secondary ? "#d62728" : "#1f77b4") << "\" stroke-width=\"1\""
            << (secondary ? " stroke-dasharray=\"4 3\"" : "") << " points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i) out << ' ';
            out << map_x(pts[i].first, x0, x1) << ',' << map_y(pts[i].second, y0, y1);
        }
        out << "\"/>\n";
    }
    for (const auto& [f1, f2] : pts) {
        const int px = map_x(f1, x0, x1), py = map_y(f2, y0, y1);
        if (secondary)
            out << "  <circle cx=\"" << px << "\" cy=\"" << py
                << "\" r=\"6\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.5\"/>\n";
        else
            out << "  <circle cx=\"" << px << "\" cy=\"" << py
                << "\" r=\"4\" fill=\"#1f77b4\"/>\n";
    }
}

}  // namespace detail

/// Renders one front (and optionally a second for comparison) as an SVG
/// scatter with a connecting polyline, f1 on the x axis and f2 on the y axis.
inline std::string render(const std::string& title, const Series& primary,
                          const Series* overlay = nullptr) {
    using namespace detail;
    Cost x0 = 0, x1 = 0, y0 = 0, y1 = 0;
    bool seeded = false;
    auto widen = [&](const Series& s) {
        for (const auto& [a, b] : s.points) {
            if (!seeded) {
                x0 = x1 = a;
                y0 = y1 = b;
                seeded = true;
                continue;
            }
            x0 = std::min(x0, a);
            x1 = std::max(x1, a);
            y0 = std::min(y0, b);
            y1 = std::max(y1, b);
        }
    };
    widen(primary);
    if (overlay && !overlay->points.empty()) widen(*overlay);

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
    out << "  <rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
    out << "  <text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"15\">" << title << "</text>\n";

    // Frame and ticks: four intervals per axis, integer labels.
    out << "  <rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kPlotW
        << "\" height=\"" << kPlotH << "\" fill=\"none\" stroke=\"#444\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const Cost xv = x0 + (x1 - x0) * i / 4;
        const Cost yv = y0 + (y1 - y0) * i / 4;
        const int px = kLeft + kPlotW * i / 4;
        const int py = kTop + kPlotH - kPlotH * i / 4;
        out << "  <line x1=\"" << px << "\" y1=\"" << kTop + kPlotH << "\" x2=\"" << px
            << "\" y2=\"" << kTop + kPlotH + 5 << "\" stroke=\"#444\"/>\n";
        out << "  <text x=\"" << px << "\" y=\"" << kTop + kPlotH + 20
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << xv
            << "</text>\n";
        out << "  <line x1=\"" << kLeft - 5 << "\" y1=\"" << py << "\" x2=\"" << kLeft
            << "\" y2=\"" << py << "\" stroke=\"#444\"/>\n";
        out << "  <text x=\"" << kLeft - 8 << "\" y=\"" << py + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << yv
            << "</text>\n";
    }
    out << "  <text x=\"" << kLeft + kPlotW / 2 << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
        << "f1 (total travel time)</text>\n";
    out << "  <text x=\"18\" y=\"" << kTop + kPlotH / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
        << "transform=\"rotate(-90 18 " << kTop + kPlotH / 2 << ")\">f2 (compactness)</text>\n";

    draw_series(out, primary, x0, x1, y0, y1, false);
    if (overlay && !overlay->points.empty()) draw_series(out, *overlay, x0, x1, y0, y1, true);

    // Legend, only needed when two series share the axes.
    if (overlay && !overlay->points.empty()) {
        const int lx = kLeft + kPlotW - 150, ly = kTop + 12;
        out << "  <circle cx=\"" << lx << "\" cy=\"" << ly << "\" r=\"4\" fill=\"#1f77b4\"/>\n";
        out << "  <text x=\"" << lx + 10 << "\" y=\"" << ly + 4
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << primary.label << "</text>\n";
        out << "  <circle cx=\"" << lx << "\" cy=\"" << ly + 18
            << "\" r=\"6\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.5\"/>\n";
        out << "  <text x=\"" << lx + 10 << "\" y=\"" << ly + 22
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << overlay->label
            << "</text>\n";
    } else if (!primary.label.empty()) {
        out << "  <text x=\"" << kLeft + kPlotW - 8 << "\" y=\"" << kTop + 16
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << primary.label << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace covrp::svg

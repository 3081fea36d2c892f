// Minimal hand-rolled SVG output: polyline charts and heat-tile grids.
// No plotting dependency; output is deterministic.
#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "hdl/heatmap.hpp"
#include "hdl/io.hpp"

namespace hdl {

struct SvgSeries {
  std::string label;
  std::string color = "#1f77b4";
  std::vector<double> x;
  std::vector<double> y;
};

/// Simple line chart with auto-scaled axes.
inline std::string svg_line_chart(const std::vector<SvgSeries>& series, const std::string& title,
                                  int width = 640, int height = 420) {
  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  bool first = true;
  for (const auto& s : series)
    for (size_t k = 0; k < s.x.size(); ++k) {
      if (first) {
        xmin = xmax = s.x[k];
        ymin = ymax = s.y[k];
        first = false;
      }
      xmin = std::min(xmin, s.x[k]);
      xmax = std::max(xmax, s.x[k]);
      ymin = std::min(ymin, s.y[k]);
      ymax = std::max(ymax, s.y[k]);
    }
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;
  const double ml = 50, mr = 15, mt = 30, mb = 35;
  auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr); };
  auto py = [&](double y) { return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb); };
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"18\" text-anchor=\"middle\" font-size=\"14\">"
      << title << "</text>\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\"" << width - mr
      << "\" y2=\"" << height - mb << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
      << height - mb << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << ml << "\" y=\"" << height - 10 << "\" font-size=\"11\">"
      << format_double(xmin) << "</text>\n";
  out << "<text x=\"" << width - mr << "\" y=\"" << height - 10
      << "\" text-anchor=\"end\" font-size=\"11\">" << format_double(xmax) << "</text>\n";
  out << "<text x=\"4\" y=\"" << height - mb << "\" font-size=\"11\">" << format_double(ymin)
      << "</text>\n";
  out << "<text x=\"4\" y=\"" << mt + 10 << "\" font-size=\"11\">" << format_double(ymax)
      << "</text>\n";
  int li = 0;
  for (const auto& s : series) {
    out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
    for (size_t k = 0; k < s.x.size(); ++k) {
      if (k) out << ' ';
      out << format_double(px(s.x[k])) << ',' << format_double(py(s.y[k]));
    }
    out << "\"/>\n";
    out << "<text x=\"" << width - mr - 5 << "\" y=\"" << mt + 14 * (li + 1)
        << "\" text-anchor=\"end\" font-size=\"11\" fill=\"" << s.color << "\">" << s.label
        << "</text>\n";
    ++li;
  }
  out << "</svg>\n";
  return out.str();
}

/// Heat-tile rendering of a grid with an optional overlaid path
/// (e.g. the decoded-coordinate trajectory).
inline std::string svg_heat_tiles(const Heatmap& h, const std::vector<Joint2D>& path,
                                  const std::string& title, int cell = 8) {
  const int width = h.cols() * cell + 20, height = h.rows() * cell + 40;
  double lo = h.values()[0], hi = h.values()[0];
  for (double v : h.values()) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (hi == lo) hi = lo + 1;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\">\n";
  out << "<text x=\"10\" y=\"16\" font-size=\"13\">" << title << "</text>\n";
  for (int i = 0; i < h.rows(); ++i)
    for (int j = 0; j < h.cols(); ++j) {
      const int shade = static_cast<int>(std::lround(255.0 * (h.at(i, j) - lo) / (hi - lo)));
      out << "<rect x=\"" << 10 + j * cell << "\" y=\"" << 30 + i * cell << "\" width=\"" << cell
          << "\" height=\"" << cell << "\" fill=\"rgb(" << shade << ',' << (255 - shade)
          << ",80)\"/>\n";
    }
  if (!path.empty()) {
    out << "<polyline fill=\"none\" stroke=\"white\" stroke-width=\"2\" points=\"";
    for (size_t k = 0; k < path.size(); ++k) {
      if (k) out << ' ';
      out << format_double(10 + (path[k].y + 0.5) * cell) << ','
          << format_double(30 + (path[k].x + 0.5) * cell);
    }
    out << "\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace hdl

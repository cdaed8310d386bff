#pragma once

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <vector>

#include "pedalfinsler/core.hpp"

namespace pedalfinsler {

/// Minimal SVG emitter for plane curves: polyline with coordinate axes and an
/// origin marker, viewport auto-fitted to the curve bounding box with a 5%
/// margin.  The y axis is flipped so the drawing uses mathematical
/// orientation.
inline void write_curve_svg(std::ostream& os, const std::vector<Vec2>& points,
                            double canvas = 640.0) {
  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
  if (!points.empty()) {
    xmin = xmax = points.front().x;
    ymin = ymax = points.front().y;
    for (Vec2 p : points) {
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, p.y);
      ymax = std::max(ymax, p.y);
    }
  }
  // always include the origin
  xmin = std::min(xmin, 0.0);
  xmax = std::max(xmax, 0.0);
  ymin = std::min(ymin, 0.0);
  ymax = std::max(ymax, 0.0);

  const double span = std::max({xmax - xmin, ymax - ymin, 1e-9});
  const double margin = 0.05 * span;
  xmin -= margin;
  ymin -= margin;
  const double width = xmax + margin - xmin;
  const double height = ymax + margin - ymin;
  const double scale = canvas / std::max(width, height);

  auto sx = [&](double x) { return (x - xmin) * scale; };
  auto sy = [&](double y) { return (ymax + margin - y) * scale; };

  char buf[128];
  std::snprintf(buf, sizeof buf, "%.3f", width * scale);
  const std::string w_px = buf;
  std::snprintf(buf, sizeof buf, "%.3f", height * scale);
  const std::string h_px = buf;

  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w_px << "\" height=\"" << h_px
     << "\" viewBox=\"0 0 " << w_px << ' ' << h_px << "\">\n";

  auto line = [&](double x0, double y0, double x1, double y1, const char* color) {
    std::snprintf(buf, sizeof buf,
                  "  <line x1=\"%.3f\" y1=\"%.3f\" x2=\"%.3f\" y2=\"%.3f\" stroke=\"%s\" "
                  "stroke-width=\"1\"/>\n",
                  x0, y0, x1, y1, color);
    os << buf;
  };
  line(sx(xmin), sy(0.0), sx(xmax + margin), sy(0.0), "#bbbbbb");
  line(sx(0.0), sy(ymin), sx(0.0), sy(ymax + margin), "#bbbbbb");

  os << "  <polyline fill=\"none\" stroke=\"#1f5fbf\" stroke-width=\"2\" points=\"";
  for (size_t i = 0; i < points.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.4f,%.4f", sx(points[i].x), sy(points[i].y));
    os << buf;
    if (i + 1 < points.size()) os << ' ';
  }
  os << "\"/>\n";

  std::snprintf(buf, sizeof buf,
                "  <circle cx=\"%.3f\" cy=\"%.3f\" r=\"3\" fill=\"#c02020\"/>\n", sx(0.0),
                sy(0.0));
  os << buf;
  os << "</svg>\n";
}

}  // namespace pedalfinsler

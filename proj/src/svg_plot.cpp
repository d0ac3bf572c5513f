#include "xqm/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace xqm {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

}  // namespace

std::string render_line_plot(const std::string& title, const std::string& x_label,
                             const std::string& y_label, const std::vector<PlotCurve>& curves) {
  const double width = 640.0, height = 480.0;
  const double left = 70.0, right = 20.0, top = 40.0, bottom = 50.0;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
  bool first = true;
  for (const PlotCurve& c : curves)
    for (std::size_t i = 0; i < c.x.size(); ++i) {
      if (!std::isfinite(c.y[i])) continue;
      if (first) {
        xmin = xmax = c.x[i];
        ymin = ymax = c.y[i];
        first = false;
      } else {
        xmin = std::min(xmin, c.x[i]);
        xmax = std::max(xmax, c.x[i]);
        ymin = std::min(ymin, c.y[i]);
        ymax = std::max(ymax, c.y[i]);
      }
    }
  if (xmax - xmin < 1e-12) xmax = xmin + 1.0;
  if (ymax - ymin < 1e-12) ymax = ymin + 1.0;
  const double ypad = 0.05 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;

  auto sx = [&](double x) { return left + (x - xmin) / (xmax - xmin) * plot_w; };
  auto sy = [&](double y) { return top + (1.0 - (y - ymin) / (ymax - ymin)) * plot_h; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
     << "\" height=\"" << height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\" "
        "font-family=\"sans-serif\">"
     << title << "</text>\n";

  // Axes and ticks.
  os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w << "\" height=\""
     << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";
  const int nticks = 5;
  for (int i = 0; i <= nticks; ++i) {
    const double fx = xmin + (xmax - xmin) * i / nticks;
    const double fy = ymin + (ymax - ymin) * i / nticks;
    os << "<line x1=\"" << sx(fx) << "\" y1=\"" << top + plot_h << "\" x2=\"" << sx(fx)
       << "\" y2=\"" << top + plot_h + 5 << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << sx(fx) << "\" y=\"" << top + plot_h + 20
       << "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">" << fmt(fx)
       << "</text>\n";
    os << "<line x1=\"" << left - 5 << "\" y1=\"" << sy(fy) << "\" x2=\"" << left << "\" y2=\""
       << sy(fy) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << left - 8 << "\" y=\"" << sy(fy) + 4
       << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">" << fmt(fy)
       << "</text>\n";
  }
  os << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 12
     << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\">" << x_label
     << "</text>\n";
  os << "<text x=\"16\" y=\"" << top + plot_h / 2
     << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\" transform=\"rotate(-90 16 "
     << top + plot_h / 2 << ")\">" << y_label << "</text>\n";

  // Curves and legend.
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const char* color = kPalette[c % (sizeof(kPalette) / sizeof(kPalette[0]))];
    std::ostringstream pts;
    for (std::size_t i = 0; i < curves[c].x.size(); ++i) {
      if (!std::isfinite(curves[c].y[i])) continue;
      pts << fmt(sx(curves[c].x[i])) << ',' << fmt(sy(curves[c].y[i])) << ' ';
    }
    os << "<polyline points=\"" << pts.str() << "\" fill=\"none\" stroke=\"" << color
       << "\" stroke-width=\"1.6\"/>\n";
    const double ly = top + 16.0 + 16.0 * static_cast<double>(c);
    os << "<line x1=\"" << left + plot_w - 120 << "\" y1=\"" << ly << "\" x2=\""
       << left + plot_w - 96 << "\" y2=\"" << ly << "\" stroke=\"" << color
       << "\" stroke-width=\"1.6\"/>\n";
    os << "<text x=\"" << left + plot_w - 90 << "\" y=\"" << ly + 4
       << "\" font-size=\"11\" font-family=\"sans-serif\">" << curves[c].label << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace xqm

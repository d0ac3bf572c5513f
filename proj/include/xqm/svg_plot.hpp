// Minimal self-contained SVG line plots for the figure command.
#pragma once

#include <string>
#include <vector>

namespace xqm {

struct PlotCurve {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

// One panel, one curve per entry, labeled axes, fixed 640x480 canvas.
std::string render_line_plot(const std::string& title, const std::string& x_label,
                             const std::string& y_label, const std::vector<PlotCurve>& curves);

}  // namespace xqm

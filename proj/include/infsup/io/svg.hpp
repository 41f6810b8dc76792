#pragma once

#include <string>
#include <utility>
#include <vector>

namespace infsup {

struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;  // positive x, y
  bool markers = true;
};

/// Dashed line y = c x^slope drawn through `anchor`.
struct ReferenceSlope {
  std::string label;
  double slope = 0.0;
  std::pair<double, double> anchor;
};

struct LogLogPlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<PlotSeries> series;
  std::vector<ReferenceSlope> references;
};

/// Standalone SVG document. Nonpositive points are skipped.
std::string render_svg(const LogLogPlot& plot);

}  // namespace infsup

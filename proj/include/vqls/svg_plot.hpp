#pragma once

// Minimal line/scatter plots rendered to standalone SVG documents.

#include <string>
#include <vector>

namespace vqls {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool dashed = false;   // e.g. extrapolated points
  bool markers = true;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = false;
  std::vector<PlotSeries> series;
};

/// Renders the plot. Non-finite points (and non-positive ones on a log axis)
/// are skipped.
std::string render_svg(const PlotSpec& spec);

}  // namespace vqls

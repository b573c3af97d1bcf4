#pragma once

#include <string>
#include <vector>

namespace swave {

/// One polyline with point markers. A series whose name ends with "*" is
/// drawn dashed (used for curves truncated by an explosion guard).
struct PlotSeries {
  std::string name;
  std::vector<double> x, y;
};

/// Straight guide line of the given slope through the last point of the
/// first series (log-log) or drawn as y = offset + slope * x (linear).
struct ReferenceLine {
  double slope = 0.0;
  std::string label;
};

struct PlotSpec {
  std::string title, x_label, y_label;
  bool loglog = false;
  std::vector<PlotSeries> series;
  std::vector<ReferenceLine> references;
  int width = 640, height = 480;
};

/// Render a self-contained SVG document. Log axes use decade ticks.
/// Throws std::invalid_argument when a series is empty or a log axis
/// receives nonpositive data.
std::string render_plot(const PlotSpec& spec);

void write_plot(const std::string& path, const PlotSpec& spec);

}  // namespace swave

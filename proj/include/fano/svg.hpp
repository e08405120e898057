#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace fano {
namespace svg {

struct Series {
  std::string label;
  std::string color;  // CSS color
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  int width = 960;
  int height = 600;
};

// Self-contained line plot (no external plotting dependency): axes, ticks,
// legend, one polyline per series. Output bytes are deterministic.
std::string line_plot(std::span<const Series> series, const PlotOptions& options);

struct HeatmapOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::string value_label;
  int width = 960;
  int height = 640;
};

// Heatmap over an (x, y) grid of cells drawn uniformly in index order with
// value-labelled ticks; values[ix * y.size() + iy]. Invalid cells are grey.
// Colors come from the fixed 9-stop ramp below.
std::string heatmap(std::span<const double> x_axis, std::span<const double> y_axis,
                    std::span<const double> values, std::span<const std::uint8_t> valid,
                    const HeatmapOptions& options);

// 9-stop viridis-like ramp, interpolated linearly in RGB; t clamped to [0,1].
std::string ramp_color(double t);

}  // namespace svg
}  // namespace fano

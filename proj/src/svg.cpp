#include "fano/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace fano {
namespace svg {

namespace {

// Fixed color stops for heatmaps, dark-violet to yellow (documented in
// docs/config.md).
constexpr unsigned kRamp[9][3] = {
    {0x44, 0x01, 0x54}, {0x47, 0x2d, 0x7b}, {0x3b, 0x52, 0x8b},
    {0x2c, 0x72, 0x8e}, {0x21, 0x91, 0x8c}, {0x28, 0xae, 0x80},
    {0x5e, 0xc9, 0x62}, {0xad, 0xdc, 0x30}, {0xfd, 0xe7, 0x25}};

std::string fmt(double v, const char* spec = "%.3f") {
  char buf[48];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

std::string tick_label(double v) { return fmt(v, "%.4g"); }

std::string escape_xml(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct AxisMap {
  double lo = 0.0, hi = 1.0;
  bool log = false;
  double px0 = 0.0, px1 = 1.0;

  double to_px(double v) const {
    double t;
    if (log) {
      t = (std::log(v) - std::log(lo)) / (std::log(hi) - std::log(lo));
    } else {
      t = (v - lo) / (hi - lo);
    }
    return px0 + t * (px1 - px0);
  }
};

std::vector<double> linear_ticks(double lo, double hi) {
  const double span = hi - lo;
  if (!(span > 0.0)) return {lo};
  const double raw = span / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (mag * m >= raw) {
      step = mag * m;
      break;
    }
  }
  std::vector<double> ticks;
  for (double t = std::ceil(lo / step) * step; t <= hi + 0.5 * step; t += step) {
    ticks.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
  }
  return ticks;
}

std::vector<double> log_ticks(double lo, double hi) {
  std::vector<double> ticks;
  const int d0 = static_cast<int>(std::ceil(std::log10(lo) - 1e-12));
  const int d1 = static_cast<int>(std::floor(std::log10(hi) + 1e-12));
  for (int d = d0; d <= d1; ++d) ticks.push_back(std::pow(10.0, d));
  if (ticks.empty()) ticks = {lo, hi};
  return ticks;
}

}  // namespace

std::string ramp_color(double t) {
  t = std::clamp(t, 0.0, 1.0);
  const double pos = t * 8.0;
  const int seg = std::min(7, static_cast<int>(pos));
  const double f = pos - seg;
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x",
                static_cast<unsigned>(std::lround(kRamp[seg][0] + f * (kRamp[seg + 1][0] - double(kRamp[seg][0])))),
                static_cast<unsigned>(std::lround(kRamp[seg][1] + f * (kRamp[seg + 1][1] - double(kRamp[seg][1])))),
                static_cast<unsigned>(std::lround(kRamp[seg][2] + f * (kRamp[seg + 1][2] - double(kRamp[seg][2])))));
  return buf;
}

std::string line_plot(std::span<const Series> series, const PlotOptions& options) {
  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo;
  for (const Series& s : series) {
    if (s.x.size() != s.y.size()) throw std::invalid_argument("svg: series size mismatch");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (options.log_x && !(s.x[i] > 0.0)) continue;
      if (options.log_y && !(s.y[i] > 0.0)) continue;
      x_lo = std::min(x_lo, s.x[i]);
      x_hi = std::max(x_hi, s.x[i]);
      y_lo = std::min(y_lo, s.y[i]);
      y_hi = std::max(y_hi, s.y[i]);
    }
  }
  if (!(x_lo <= x_hi)) { x_lo = 0.0; x_hi = 1.0; }
  if (!(y_lo <= y_hi)) { y_lo = 0.0; y_hi = 1.0; }
  if (x_lo == x_hi) { x_lo -= 0.5; x_hi += 0.5; }
  if (y_lo == y_hi) { y_lo -= 0.5; y_hi += 0.5; }
  if (!options.log_y) {
    const double pad = 0.05 * (y_hi - y_lo);
    y_lo -= pad;
    y_hi += pad;
  }

  const double ml = 78, mr = 24, mt = 42, mb = 56;
  const AxisMap xm{x_lo, x_hi, options.log_x, ml, options.width - mr};
  const AxisMap ym{y_lo, y_hi, options.log_y, options.height - mb, mt};

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width << "\" height=\""
      << options.height << "\" viewBox=\"0 0 " << options.width << ' ' << options.height
      << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << options.width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"16\">" << escape_xml(options.title)
      << "</text>\n";

  const auto x_ticks = options.log_x ? log_ticks(x_lo, x_hi) : linear_ticks(x_lo, x_hi);
  const auto y_ticks = options.log_y ? log_ticks(y_lo, y_hi) : linear_ticks(y_lo, y_hi);
  out << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
  for (double t : x_ticks) {
    const double px = xm.to_px(t);
    out << "<line x1=\"" << fmt(px) << "\" y1=\"" << fmt(ym.px0) << "\" x2=\"" << fmt(px)
        << "\" y2=\"" << fmt(ym.px1) << "\" stroke=\"#ddd\"/>\n";
    out << "<text x=\"" << fmt(px) << "\" y=\"" << fmt(ym.px0 + 16)
        << "\" text-anchor=\"middle\">" << tick_label(t) << "</text>\n";
  }
  for (double t : y_ticks) {
    const double py = ym.to_px(t);
    out << "<line x1=\"" << fmt(xm.px0) << "\" y1=\"" << fmt(py) << "\" x2=\"" << fmt(xm.px1)
        << "\" y2=\"" << fmt(py) << "\" stroke=\"#ddd\"/>\n";
    out << "<text x=\"" << fmt(xm.px0 - 6) << "\" y=\"" << fmt(py + 4)
        << "\" text-anchor=\"end\">" << tick_label(t) << "</text>\n";
  }
  out << "</g>\n";
  out << "<rect x=\"" << fmt(xm.px0) << "\" y=\"" << fmt(ym.px1) << "\" width=\""
      << fmt(xm.px1 - xm.px0) << "\" height=\"" << fmt(ym.px0 - ym.px1)
      << "\" fill=\"none\" stroke=\"#444\"/>\n";

  for (const Series& s : series) {
    out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (options.log_x && !(s.x[i] > 0.0)) continue;
      if (options.log_y && !(s.y[i] > 0.0)) continue;
      if (!first) out << ' ';
      out << fmt(xm.to_px(s.x[i])) << ',' << fmt(ym.to_px(s.y[i]));
      first = false;
    }
    out << "\"/>\n";
  }

  double legend_y = mt + 14;
  for (const Series& s : series) {
    out << "<line x1=\"" << fmt(xm.px1 - 150) << "\" y1=\"" << fmt(legend_y - 4) << "\" x2=\""
        << fmt(xm.px1 - 122) << "\" y2=\"" << fmt(legend_y - 4) << "\" stroke=\"" << s.color
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << fmt(xm.px1 - 116) << "\" y=\"" << fmt(legend_y)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape_xml(s.label)
        << "</text>\n";
    legend_y += 18;
  }

  out << "<text x=\"" << (ml + (options.width - ml - mr) / 2) << "\" y=\""
      << options.height - 14 << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"13\">" << escape_xml(options.x_label) << "</text>\n";
  out << "<text x=\"20\" y=\"" << (mt + (options.height - mt - mb) / 2)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
      << "transform=\"rotate(-90 20 " << (mt + (options.height - mt - mb) / 2) << ")\">"
      << escape_xml(options.y_label) << "</text>\n";
  out << "</svg>\n";
  return out.str();
}

std::string heatmap(std::span<const double> x_axis, std::span<const double> y_axis,
                    std::span<const double> values, std::span<const std::uint8_t> valid,
                    const HeatmapOptions& options) {
  const std::size_t nx = x_axis.size(), ny = y_axis.size();
  if (values.size() != nx * ny || valid.size() != nx * ny) {
    throw std::invalid_argument("svg: heatmap grid size mismatch");
  }
  double v_lo = std::numeric_limits<double>::infinity(), v_hi = -v_lo;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!valid[k]) continue;
    v_lo = std::min(v_lo, values[k]);
    v_hi = std::max(v_hi, values[k]);
  }
  if (!(v_lo <= v_hi)) { v_lo = 0.0; v_hi = 1.0; }
  const double v_span = (v_hi > v_lo) ? v_hi - v_lo : 1.0;

  const double ml = 86, mr = 110, mt = 42, mb = 64;
  const double plot_w = options.width - ml - mr, plot_h = options.height - mt - mb;
  const double cw = plot_w / static_cast<double>(nx), ch = plot_h / static_cast<double>(ny);

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width << "\" height=\""
      << options.height << "\" viewBox=\"0 0 " << options.width << ' ' << options.height
      << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << options.width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"16\">" << escape_xml(options.title)
      << "</text>\n";

  // Cells are uniform in index space; y runs bottom-up.
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      const std::size_t cell = i * ny + j;
      const std::string color =
          valid[cell] ? ramp_color((values[cell] - v_lo) / v_span) : std::string("#bbbbbb");
      out << "<rect x=\"" << fmt(ml + cw * static_cast<double>(i)) << "\" y=\""
          << fmt(mt + plot_h - ch * static_cast<double>(j + 1)) << "\" width=\"" << fmt(cw + 0.5)
          << "\" height=\"" << fmt(ch + 0.5) << "\" fill=\"" << color << "\"/>\n";
    }
  }
  out << "<rect x=\"" << fmt(ml) << "\" y=\"" << fmt(mt) << "\" width=\"" << fmt(plot_w)
      << "\" height=\"" << fmt(plot_h) << "\" fill=\"none\" stroke=\"#444\"/>\n";

  out << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
  const std::size_t x_step = std::max<std::size_t>(1, nx / 5);
  for (std::size_t i = 0; i < nx; i += x_step) {
    out << "<text x=\"" << fmt(ml + cw * (static_cast<double>(i) + 0.5)) << "\" y=\""
        << fmt(mt + plot_h + 16) << "\" text-anchor=\"middle\">" << tick_label(x_axis[i])
        << "</text>\n";
  }
  const std::size_t y_step = std::max<std::size_t>(1, ny / 5);
  for (std::size_t j = 0; j < ny; j += y_step) {
    out << "<text x=\"" << fmt(ml - 6) << "\" y=\""
        << fmt(mt + plot_h - ch * (static_cast<double>(j) + 0.5) + 4)
        << "\" text-anchor=\"end\">" << tick_label(y_axis[j]) << "</text>\n";
  }
  out << "</g>\n";

  // Colorbar.
  const double bar_x = options.width - mr + 28, bar_w = 18;
  const int bar_cells = 64;
  for (int k = 0; k < bar_cells; ++k) {
    const double t = (static_cast<double>(k) + 0.5) / bar_cells;
    out << "<rect x=\"" << fmt(bar_x) << "\" y=\"" << fmt(mt + plot_h * (1.0 - static_cast<double>(k + 1) / bar_cells))
        << "\" width=\"" << fmt(bar_w) << "\" height=\"" << fmt(plot_h / bar_cells + 0.5)
        << "\" fill=\"" << ramp_color(t) << "\"/>\n";
  }
  out << "<rect x=\"" << fmt(bar_x) << "\" y=\"" << fmt(mt) << "\" width=\"" << fmt(bar_w)
      << "\" height=\"" << fmt(plot_h) << "\" fill=\"none\" stroke=\"#444\"/>\n";
  out << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
  out << "<text x=\"" << fmt(bar_x + bar_w + 4) << "\" y=\"" << fmt(mt + plot_h + 4) << "\">"
      << tick_label(v_lo) << "</text>\n";
  out << "<text x=\"" << fmt(bar_x + bar_w + 4) << "\" y=\"" << fmt(mt + 8) << "\">"
      << tick_label(v_hi) << "</text>\n";
  out << "<text x=\"" << fmt(bar_x) << "\" y=\"" << fmt(mt - 8) << "\">"
      << escape_xml(options.value_label) << "</text>\n";
  out << "</g>\n";

  out << "<text x=\"" << (ml + plot_w / 2) << "\" y=\"" << options.height - 16
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
      << escape_xml(options.x_label) << "</text>\n";
  out << "<text x=\"22\" y=\"" << (mt + plot_h / 2)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
      << "transform=\"rotate(-90 22 " << (mt + plot_h / 2) << ")\">"
      << escape_xml(options.y_label) << "</text>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace svg
}  // namespace fano

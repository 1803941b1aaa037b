#include "vqls/svg_plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace vqls {

namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 420;
constexpr double kLeft = 70;
constexpr double kRight = 170;
constexpr double kTop = 40;
constexpr double kBottom = 55;

constexpr std::array<const char*, 6> kColors = {"#1f77b4", "#d62728", "#2ca02c",
                                                "#9467bd", "#ff7f0e", "#8c564b"};

std::string escape(const std::string& s) {
  std::string out;
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

bool usable(double x, double y, bool log_y) {
  return std::isfinite(x) && std::isfinite(y) && (!log_y || y > 0.0);
}

}  // namespace

std::string render_svg(const PlotSpec& spec) {
  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -xmin;
  double ymin = xmin;
  double ymax = -xmin;
  for (const auto& s : spec.series) {
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!usable(s.x[i], s.y[i], spec.log_y)) continue;
      const double y = spec.log_y ? std::log10(s.y[i]) : s.y[i];
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (!std::isfinite(xmin)) {
    xmin = 0;
    xmax = 1;
    ymin = 0;
    ymax = 1;
  }
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) {
    ymin -= 0.5;
    ymax += 0.5;
  }
  const double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) {
    const double v = spec.log_y ? std::log10(y) : y;
    return kTop + ph - (v - ymin) / (ymax - ymin) * ph;
  };

  std::string out;
  out += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
      kWidth, kHeight, kWidth, kHeight);
  out += fmt::format("<rect width=\"{}\" height=\"{}\" fill=\"white\"/>\n", kWidth, kHeight);
  out += fmt::format("<text x=\"{}\" y=\"22\" font-size=\"15\" text-anchor=\"middle\" font-family=\"sans-serif\">{}</text>\n",
                     kLeft + pw / 2, escape(spec.title));
  out += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n",
                     kLeft, kTop, pw, ph);

  // Ticks: five evenly spaced on each axis; decades on a log axis.
  for (int i = 0; i <= 4; ++i) {
    const double xv = xmin + (xmax - xmin) * i / 4.0;
    out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" font-size=\"11\" text-anchor=\"middle\" font-family=\"sans-serif\">{:.4g}</text>\n",
                       px(xv), kTop + ph + 16, xv);
  }
  if (spec.log_y) {
    for (int d = static_cast<int>(std::ceil(ymin)); d <= static_cast<int>(std::floor(ymax)); ++d) {
      const double yy = kTop + ph - (d - ymin) / (ymax - ymin) * ph;
      out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" font-size=\"11\" text-anchor=\"end\" font-family=\"sans-serif\">1e{}</text>\n",
                         kLeft - 6, yy + 4, d);
    }
  } else {
    for (int i = 0; i <= 4; ++i) {
      const double yv = ymin + (ymax - ymin) * i / 4.0;
      out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" font-size=\"11\" text-anchor=\"end\" font-family=\"sans-serif\">{:.4g}</text>\n",
                         kLeft - 6, py(yv) + 4, yv);
    }
  }
  out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" font-size=\"13\" text-anchor=\"middle\" font-family=\"sans-serif\">{}</text>\n",
                     kLeft + pw / 2, kHeight - 14, escape(spec.x_label));
  out += fmt::format("<text x=\"16\" y=\"{:.1f}\" font-size=\"13\" text-anchor=\"middle\" font-family=\"sans-serif\" transform=\"rotate(-90 16 {:.1f})\">{}</text>\n",
                     kTop + ph / 2, kTop + ph / 2, escape(spec.y_label));

  for (std::size_t si = 0; si < spec.series.size(); ++si) {
    const auto& s = spec.series[si];
    const char* color = kColors[si % kColors.size()];
    std::string points;
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!usable(s.x[i], s.y[i], spec.log_y)) continue;
      points += fmt::format("{:.2f},{:.2f} ", px(s.x[i]), py(s.y[i]));
      if (s.markers) {
        out += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3\" fill=\"{}\"/>\n", px(s.x[i]),
                           py(s.y[i]), color);
      }
    }
    if (!points.empty()) {
      points.pop_back();
      out += fmt::format("<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"{}/>\n",
                         points, color, s.dashed ? " stroke-dasharray=\"5,4\"" : "");
    }
    const double ly = kTop + 14 + 18 * static_cast<double>(si);
    out += fmt::format("<line x1=\"{:.1f}\" y1=\"{:.1f}\" x2=\"{:.1f}\" y2=\"{:.1f}\" stroke=\"{}\" stroke-width=\"2\"{}/>\n",
                       kLeft + pw + 10, ly, kLeft + pw + 30, ly, color,
                       s.dashed ? " stroke-dasharray=\"5,4\"" : "");
    out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" font-size=\"11\" font-family=\"sans-serif\">{}</text>\n",
                       kLeft + pw + 35, ly + 4, escape(s.label));
  }
  out += "</svg>\n";
  return out;
}

}  // namespace vqls

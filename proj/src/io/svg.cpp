#include "infsup/io/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace infsup {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 170.0;  // legend column
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

constexpr std::array<const char*, 6> kColors = {"#1f77b4", "#d62728", "#2ca02c",
                                                "#9467bd", "#ff7f0e", "#8c564b"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Axes {
  double lx0, lx1, ly0, ly1;  // decade-aligned log10 ranges

  double px(double x) const {
    return kLeft + (std::log10(x) - lx0) / (lx1 - lx0) * (kWidth - kLeft - kRight);
  }
  double py(double y) const {
    return kHeight - kBottom - (std::log10(y) - ly0) / (ly1 - ly0) * (kHeight - kTop - kBottom);
  }
};

}  // namespace

std::string render_svg(const LogLogPlot& plot) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = 0.0;
  double ymin = xmin, ymax = 0.0;
  for (const auto& s : plot.series)
    for (auto [x, y] : s.points) {
      if (!(x > 0.0 && y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) continue;
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  if (xmax == 0.0) {
    xmin = ymin = 1.0;
    xmax = ymax = 10.0;
  }
  Axes ax{std::floor(std::log10(xmin)), std::ceil(std::log10(xmax)), std::floor(std::log10(ymin)),
          std::ceil(std::log10(ymax))};
  if (ax.lx1 == ax.lx0) ax.lx1 += 1.0;
  if (ax.ly1 == ax.ly0) ax.ly1 += 1.0;

  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" "
      "viewBox=\"0 0 {0} {1}\" font-family=\"sans-serif\" font-size=\"12\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
      kWidth, kHeight);
  out += fmt::format("<text x=\"{}\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n",
                     (kLeft + kWidth - kRight) / 2, escape(plot.title));

  // decade grid and tick labels
  for (double e = ax.lx0; e <= ax.lx1; e += 1.0) {
    const double x = ax.px(std::pow(10.0, e));
    out += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1}\" x2=\"{0:.2f}\" y2=\"{2}\" stroke=\"#ddd\"/>\n",
                       x, kTop, kHeight - kBottom);
    out += fmt::format("<text x=\"{:.2f}\" y=\"{}\" text-anchor=\"middle\">1e{}</text>\n", x,
                       kHeight - kBottom + 16, static_cast<int>(e));
  }
  for (double e = ax.ly0; e <= ax.ly1; e += 1.0) {
    const double y = ax.py(std::pow(10.0, e));
    out += fmt::format("<line x1=\"{1}\" y1=\"{0:.2f}\" x2=\"{2}\" y2=\"{0:.2f}\" stroke=\"#ddd\"/>\n",
                       y, kLeft, kWidth - kRight);
    out += fmt::format("<text x=\"{}\" y=\"{:.2f}\" text-anchor=\"end\">1e{}</text>\n", kLeft - 6,
                       y + 4, static_cast<int>(e));
  }
  out += fmt::format(
      "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n", kLeft,
      kTop, kWidth - kLeft - kRight, kHeight - kTop - kBottom);
  out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
                     (kLeft + kWidth - kRight) / 2, kHeight - 12, escape(plot.x_label));
  out += fmt::format(
      "<text x=\"16\" y=\"{0}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {0})\">{1}</text>\n",
      (kTop + kHeight - kBottom) / 2, escape(plot.y_label));

  out += fmt::format("<clipPath id=\"plot\"><rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\"/></clipPath>\n",
                     kLeft, kTop, kWidth - kLeft - kRight, kHeight - kTop - kBottom);
  double legend_y = kTop + 10;
  std::size_t color = 0;
  for (const auto& s : plot.series) {
    const char* c = kColors[color++ % kColors.size()];
    std::string path;
    for (auto [x, y] : s.points) {
      if (!(x > 0.0 && y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) continue;
      path += fmt::format("{}{:.2f},{:.2f}", path.empty() ? "M" : " L", ax.px(x), ax.py(y));
      if (s.markers) {
        out += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"2.5\" fill=\"{}\"/>\n", ax.px(x),
                           ax.py(y), c);
      }
    }
    if (!path.empty()) {
      out += fmt::format("<path d=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"/>\n", path, c);
    }
    out += fmt::format("<line x1=\"{0}\" y1=\"{1:.2f}\" x2=\"{2}\" y2=\"{1:.2f}\" stroke=\"{3}\" "
                       "stroke-width=\"2\"/>\n<text x=\"{4}\" y=\"{5:.2f}\">{6}</text>\n",
                       kWidth - kRight + 10, legend_y, kWidth - kRight + 30, c,
                       kWidth - kRight + 36, legend_y + 4, escape(s.label));
    legend_y += 18;
  }
  for (const auto& r : plot.references) {
    const auto [x0, y0] = r.anchor;
    if (!(x0 > 0.0 && y0 > 0.0)) continue;
    const double xa = std::pow(10.0, ax.lx0);
    const double xb = std::pow(10.0, ax.lx1);
    const double ya = y0 * std::pow(xa / x0, r.slope);
    const double yb = y0 * std::pow(xb / x0, r.slope);
    out += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"#555\" "
                       "stroke-dasharray=\"6 4\" clip-path=\"url(#plot)\"/>\n",
                       ax.px(xa), ax.py(ya), ax.px(xb), ax.py(yb));
    out += fmt::format("<line x1=\"{0}\" y1=\"{1:.2f}\" x2=\"{2}\" y2=\"{1:.2f}\" stroke=\"#555\" "
                       "stroke-dasharray=\"6 4\"/>\n<text x=\"{3}\" y=\"{4:.2f}\">{5}</text>\n",
                       kWidth - kRight + 10, legend_y, kWidth - kRight + 30, kWidth - kRight + 36,
                       legend_y + 4, escape(r.label));
    legend_y += 18;
  }
  out += "</svg>\n";
  return out;
}

}  // namespace infsup

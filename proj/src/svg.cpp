#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "spinwave/io.hpp"

namespace spinwave::io {

namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 90, kRight = 20, kTop = 40, kBottom = 60;
constexpr const char* kColors[] = {"#1f4e9c", "#c0392b"};

std::string num(double v, const char* fmt = "%.2f") {
  char buf[48];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo, hi;
};

Range padded(double lo, double hi) {
  if (!(hi > lo)) {
    const double d = lo == 0.0 ? 1.0 : std::abs(lo) * 0.1;
    return {lo - d, hi + d};
  }
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad};
}

}  // namespace

std::string render_svg(const PlotSpec& plot) {
  double xlo = INFINITY, xhi = -INFINITY, ylo = INFINITY, yhi = -INFINITY;
  for (const auto& s : plot.series) {
    for (double x : s.x) xlo = std::min(xlo, x), xhi = std::max(xhi, x);
    for (double y : s.y) ylo = std::min(ylo, y), yhi = std::max(yhi, y);
  }
  if (!std::isfinite(xlo)) xlo = 0, xhi = 1, ylo = 0, yhi = 1;
  const Range xr = padded(xlo, xhi);
  const Range yr = padded(ylo, yhi);
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  const auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  const auto py = [&](double y) { return kTop + (yr.hi - y) / (yr.hi - yr.lo) * ph; };

  std::string o;
  o += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth, "%.0f") +
       "\" height=\"" + num(kHeight, "%.0f") + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o += "<text x=\"" + num(kWidth / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" +
       escape(plot.title) + "</text>\n";
  o += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(pw) +
       "\" height=\"" + num(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int i = 0; i <= 4; ++i) {
    const double xv = xr.lo + (xr.hi - xr.lo) * i / 4.0;
    const double yv = yr.lo + (yr.hi - yr.lo) * i / 4.0;
    o += "<text x=\"" + num(px(xv)) + "\" y=\"" + num(kTop + ph + 16) +
         "\" text-anchor=\"middle\">" + num(xv, "%.4g") + "</text>\n";
    o += "<text x=\"" + num(kLeft - 6) + "\" y=\"" + num(py(yv) + 4) +
         "\" text-anchor=\"end\">" + num(yv, "%.3g") + "</text>\n";
  }
  if (yr.lo < 0.0 && yr.hi > 0.0) {
    o += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(py(0)) + "\" x2=\"" + num(kLeft + pw) +
         "\" y2=\"" + num(py(0)) + "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
  }
  o += "<text x=\"" + num(kLeft + pw / 2) + "\" y=\"" + num(kHeight - 18) +
       "\" text-anchor=\"middle\">" + escape(plot.x_label) + "</text>\n";
  o += "<text transform=\"translate(18," + num(kTop + ph / 2) +
       ") rotate(-90)\" text-anchor=\"middle\">" + escape(plot.y_label) + "</text>\n";

  for (std::size_t s = 0; s < plot.series.size(); ++s) {
    const auto& ser = plot.series[s];
    const char* color = kColors[s % 2];
    o += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.2\" points=\"";
    for (std::size_t i = 0; i < std::min(ser.x.size(), ser.y.size()); ++i) {
      if (i) o += ' ';
      o += num(px(ser.x[i])) + "," + num(py(ser.y[i]));
    }
    o += "\"/>\n";
    if (plot.series.size() > 1) {
      const double ly = kTop + 14 + 16 * static_cast<double>(s);
      o += "<line x1=\"" + num(kLeft + pw - 130) + "\" y1=\"" + num(ly - 4) + "\" x2=\"" +
           num(kLeft + pw - 110) + "\" y2=\"" + num(ly - 4) + "\" stroke=\"" + color + "\"/>\n";
      o += "<text x=\"" + num(kLeft + pw - 104) + "\" y=\"" + num(ly) + "\">" + escape(ser.name) +
           "</text>\n";
    }
  }
  o += "</svg>\n";
  return o;
}

}  // namespace spinwave::io

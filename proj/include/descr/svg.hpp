#pragma once

// SVG rendering for bivariate signomials: the negative region in log
// coordinates next to the signed support with optional hyperplane lines.

#include "oracle.hpp"
#include "signomial.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace descr {

struct PlotLine {
  Vec normal;  // v, the line is v . mu = a
  Rational offset;
};

struct PlotOptions {
  GridSpec grid;
  std::vector<PlotLine> lines;
  std::string title;
};

namespace detail {
inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}
}  // namespace detail

inline std::string render_svg(const Signomial& f, const PlotOptions& opt) {
  using detail::num;
  if (f.dimension() != 2) throw std::invalid_argument("plotting needs exactly two variables");
  const GridSpec& g = opt.grid;
  const double panel = 400, margin = 40, width = 2 * panel + 3 * margin, height = panel + 2 * margin + 20;
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(width) << "\" height=\""
      << num(height) << "\" viewBox=\"0 0 " << num(width) << " " << num(height) << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!opt.title.empty()) out << "<text x=\"" << num(margin) << "\" y=\"20\" font-size=\"14\">" << opt.title << "</text>\n";

  // left panel: negative grid cells, merged into horizontal runs
  const double x0 = margin, y0 = margin + 10;
  const std::size_t res = g.resolution;
  const double cell = panel / static_cast<double>(res);
  auto mask = detail::negative_mask(f, g);
  out << "<g id=\"negative-region\" fill=\"#d62728\" fill-opacity=\"0.7\" stroke=\"none\">\n";
  for (std::size_t j = 0; j < res; ++j) {
    std::size_t i = 0;
    while (i < res) {
      if (!mask[j * res + i]) {
        ++i;
        continue;
      }
      std::size_t start = i;
      while (i < res && mask[j * res + i]) ++i;
      double px = x0 + cell * static_cast<double>(start);
      double py = y0 + panel - cell * static_cast<double>(j + 1);
      out << "<rect x=\"" << num(px) << "\" y=\"" << num(py) << "\" width=\"" << num(cell * static_cast<double>(i - start))
          << "\" height=\"" << num(cell) << "\"/>\n";
    }
  }
  out << "</g>\n";
  out << "<rect x=\"" << num(x0) << "\" y=\"" << num(y0) << "\" width=\"" << num(panel) << "\" height=\"" << num(panel)
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << num(x0) << "\" y=\"" << num(y0 + panel + 16) << "\" font-size=\"11\">log x1 in [" << num(g.lo[0])
      << ", " << num(g.hi[0]) << "], log x2 in [" << num(g.lo[1]) << ", " << num(g.hi[1]) << "]</text>\n";

  // right panel: support
  const double sx0 = 2 * margin + panel;
  auto ss = signed_support(f);
  double lo0 = 0, hi0 = 1, lo1 = 0, hi1 = 1;
  bool first = true;
  for (const auto& t : f.terms()) {
    double a = to_double(t.exponent[0]), b = to_double(t.exponent[1]);
    if (first) {
      lo0 = hi0 = a;
      lo1 = hi1 = b;
      first = false;
    }
    lo0 = std::min(lo0, a);
    hi0 = std::max(hi0, a);
    lo1 = std::min(lo1, b);
    hi1 = std::max(hi1, b);
  }
  double span = std::max({hi0 - lo0, hi1 - lo1, 1.0});
  lo0 -= 0.5;
  lo1 -= 0.5;
  span += 1.0;
  auto px = [&](double a) { return sx0 + (a - lo0) / span * panel; };
  auto py = [&](double b) { return y0 + panel - (b - lo1) / span * panel; };
  out << "<rect x=\"" << num(sx0) << "\" y=\"" << num(y0) << "\" width=\"" << num(panel) << "\" height=\"" << num(panel)
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<g id=\"hyperplanes\" stroke=\"#555555\" stroke-dasharray=\"4,3\">\n";
  for (const auto& l : opt.lines) {
    double v0 = to_double(l.normal.at(0)), v1 = to_double(l.normal.at(1)), a = to_double(l.offset);
    double ax, ay, bx, by;
    if (std::abs(v1) > std::abs(v0)) {
      ax = lo0;
      bx = lo0 + span;
      ay = (a - v0 * ax) / v1;
      by = (a - v0 * bx) / v1;
    } else {
      ay = lo1;
      by = lo1 + span;
      ax = (a - v1 * ay) / v0;
      bx = (a - v1 * by) / v0;
    }
    out << "<line x1=\"" << num(px(ax)) << "\" y1=\"" << num(py(ay)) << "\" x2=\"" << num(px(bx)) << "\" y2=\""
        << num(py(by)) << "\"/>\n";
  }
  out << "</g>\n<g id=\"support\">\n";
  for (const auto& mu : ss.positives)
    out << "<circle cx=\"" << num(px(to_double(mu[0]))) << "\" cy=\"" << num(py(to_double(mu[1])))
        << "\" r=\"5\" fill=\"#1f77b4\"/>\n";
  for (const auto& mu : ss.negatives)
    out << "<circle cx=\"" << num(px(to_double(mu[0]))) << "\" cy=\"" << num(py(to_double(mu[1])))
        << "\" r=\"5\" fill=\"#d62728\"/>\n";
  out << "</g>\n</svg>\n";
  return out.str();
}

}  // namespace descr

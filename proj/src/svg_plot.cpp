#include "couplinglab/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "couplinglab/errors.hpp"

namespace couplinglab {

namespace {

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

std::string tick_label(double v) {
  std::ostringstream s;
  s.precision(4);
  s << v;
  return s.str();
}

}  // namespace

std::string render_svg(const PlotSpec& plot) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0;
  double y0 = x0, y1 = -x0;
  for (const auto& c : plot.curves) {
    for (std::size_t i = 0; i < std::min(c.x.size(), c.y.size()); ++i) {
      if (!std::isfinite(c.x[i]) || !std::isfinite(c.y[i])) continue;
      x0 = std::min(x0, c.x[i]);
      x1 = std::max(x1, c.x[i]);
      y0 = std::min(y0, c.y[i]);
      y1 = std::max(y1, c.y[i]);
    }
  }
  if (!(x0 <= x1) || !(y0 <= y1)) throw InvalidParameter("plot has no finite data");
  if (x1 == x0) x1 = x0 + 1.0;
  y0 = std::min(y0, 0.0);
  if (y1 == y0) y1 = y0 + 1.0;
  y1 += 0.05 * (y1 - y0);

  const double left = 70, right = 150, top = 40, bottom = 55;
  const double w = plot.width - left - right;
  const double h = plot.height - top - bottom;
  auto sx = [&](double x) { return left + (x - x0) / (x1 - x0) * w; };
  auto sy = [&](double y) { return top + (y1 - y) / (y1 - y0) * h; };

  std::ostringstream svg;
  svg.precision(6);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << plot.width << "\" height=\""
      << plot.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << left + w / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
      << escape(plot.title) << "</text>\n";
  svg << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << w << "\" height=\"" << h
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int i = 0; i <= 5; ++i) {
    const double xv = x0 + (x1 - x0) * i / 5.0;
    const double yv = y0 + (y1 - y0) * i / 5.0;
    svg << "<line x1=\"" << sx(xv) << "\" y1=\"" << top + h << "\" x2=\"" << sx(xv) << "\" y2=\""
        << top + h + 5 << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << sx(xv) << "\" y=\"" << top + h + 18 << "\" text-anchor=\"middle\">"
        << tick_label(xv) << "</text>\n";
    svg << "<line x1=\"" << left - 5 << "\" y1=\"" << sy(yv) << "\" x2=\"" << left << "\" y2=\""
        << sy(yv) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << left - 8 << "\" y=\"" << sy(yv) + 4 << "\" text-anchor=\"end\">"
        << tick_label(yv) << "</text>\n";
  }
  svg << "<text x=\"" << left + w / 2 << "\" y=\"" << plot.height - 12
      << "\" text-anchor=\"middle\">" << escape(plot.x_label) << "</text>\n";
  svg << "<text transform=\"translate(18," << top + h / 2
      << ") rotate(-90)\" text-anchor=\"middle\">" << escape(plot.y_label) << "</text>\n";

  double legend_y = top + 10;
  for (const auto& c : plot.curves) {
    const std::string dash = c.dashed ? " stroke-dasharray=\"6,4\"" : "";
    std::ostringstream path;
    path.precision(6);
    bool pen_down = false;
    for (std::size_t i = 0; i < std::min(c.x.size(), c.y.size()); ++i) {
      if (!std::isfinite(c.x[i]) || !std::isfinite(c.y[i])) {
        pen_down = false;
        continue;
      }
      path << (pen_down ? " L " : " M ") << sx(c.x[i]) << ' ' << sy(c.y[i]);
      pen_down = true;
    }
    svg << "<path d=\"" << path.str() << "\" fill=\"none\" stroke=\"" << c.color
        << "\" stroke-width=\"1.8\"" << dash << "/>\n";
    const double lx = left + w + 12;
    svg << "<line x1=\"" << lx << "\" y1=\"" << legend_y << "\" x2=\"" << lx + 24 << "\" y2=\""
        << legend_y << "\" stroke=\"" << c.color << "\" stroke-width=\"1.8\"" << dash << "/>\n";
    svg << "<text x=\"" << lx + 30 << "\" y=\"" << legend_y + 4 << "\">" << escape(c.label)
        << "</text>\n";
    legend_y += 18;
  }
  svg << "</svg>\n";
  return svg.str();
}

void write_svg(const PlotSpec& plot, const std::filesystem::path& path) {
  const std::string body = render_svg(plot);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write plot file '" + path.string() + "'");
  out << body;
  if (!out) throw std::runtime_error("failed writing plot file '" + path.string() + "'");
}

}  // namespace couplinglab

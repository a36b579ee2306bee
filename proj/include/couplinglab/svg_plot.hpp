// Minimal static SVG line plots for sweep tables.
#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace couplinglab {

struct Curve {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;  // nan breaks the line
  bool dashed = false;
  std::string color = "#1f77b4";
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Curve> curves;
  int width = 640;
  int height = 420;
};

/// Throws InvalidParameter if there is nothing finite to draw.
std::string render_svg(const PlotSpec& plot);
/// Throws std::runtime_error if the file cannot be written.
void write_svg(const PlotSpec& plot, const std::filesystem::path& path);

}  // namespace couplinglab

#pragma once

#include "skewfbm/skew_transform.hpp"
#include "skewfbm/solver.hpp"
#include "skewfbm/types.hpp"

#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace skewfbm {

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// Shortest round-trip decimal form, '.' as decimal point regardless of locale.
std::string format_double(double v);

/// Writes to a sibling temporary file and renames it over the target.
void write_atomic(const std::filesystem::path& target, const std::string& content);

/// "t,value"
std::string path_csv(const SamplePath& path);

/// "t,B,x_exact,x_mollified_n<k>..." in the order of `mollified`.
std::string solution_csv(const SamplePath& driver, const SolutionPath& exact, std::span<const SolutionPath> mollified);

/// "n,sup_error"
std::string convergence_csv(const ConvergenceReport& report);

/// "x,sigma,sigma_n,lambda,lambda_n" on count equispaced points of [lo, hi]; params needs n.
std::string transform_table_csv(const SkewParams& params, double lo, double hi, Index count);

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f77b4";
  double width = 1.0;
  bool markers = false;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  std::vector<std::string> notes;
};

/// Standalone SVG 1.1 document with one set of axes.
std::string svg_plot(const PlotSpec& spec, std::span<const Series> series, double width = 640, double height = 400);

struct Panel {
  PlotSpec spec;
  std::vector<Series> series;
};

/// Row-major grid of panels in a single SVG document.
std::string svg_grid(std::span<const Panel> panels, int columns, double panel_width = 360, double panel_height = 240,
                     const std::string& title = "");

}  // namespace skewfbm

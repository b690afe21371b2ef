#include "skewfbm/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <system_error>

namespace skewfbm {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_atomic(const std::filesystem::path& target, const std::string& content) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (target.has_parent_path()) {
    fs::create_directories(target.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + target.parent_path().string() + ": " + ec.message());
  }
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot rename into " + target.string());
  }
}

std::string path_csv(const SamplePath& path) {
  std::string out = "t,value\n";
  for (Index i = 0; i < path.size(); ++i) {
    out += format_double(path.grid.time(i));
    out += ',';
    out += format_double(path[i]);
    out += '\n';
  }
  return out;
}

std::string solution_csv(const SamplePath& driver, const SolutionPath& exact,
                         std::span<const SolutionPath> mollified) {
  std::string out = "t,B,x_exact";
  for (const auto& m : mollified) out += ",x_mollified_n" + std::to_string(m.n.value_or(0));
  out += '\n';
  for (Index i = 0; i < driver.size(); ++i) {
    out += format_double(driver.grid.time(i));
    out += ',' + format_double(driver[i]);
    out += ',' + format_double(exact.path[i]);
    for (const auto& m : mollified) out += ',' + format_double(m.path[i]);
    out += '\n';
  }
  return out;
}

std::string convergence_csv(const ConvergenceReport& report) {
  std::string out = "n,sup_error\n";
  for (const auto& e : report.entries) out += std::to_string(e.n) + ',' + format_double(e.sup_error) + '\n';
  return out;
}

std::string transform_table_csv(const SkewParams& params, double lo, double hi, Index count) {
  if (count < 2 || !(lo < hi)) throw DomainError("transform table needs count >= 2 and lo < hi");
  std::string out = "x,sigma,sigma_n,lambda,lambda_n\n";
  for (Index i = 0; i < count; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    out += format_double(x) + ',' + format_double(sigma(params, x)) + ',' + format_double(sigma_n(params, x)) + ',' +
           format_double(lambda_exact(params, x)) + ',' + format_double(lambda_n(params, x)) + '\n';
  }
  return out;
}

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

std::string fmt(double v, int precision = 4) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(precision);
  os << v;
  return os.str();
}

// Axes, ticks and polylines inside the box [x0, x0 + w] x [y0, y0 + h].
void render_axes(std::ostringstream& os, const PlotSpec& spec, std::span<const Series> series, double x0, double y0,
                 double w, double h) {
  const double left = x0 + 58, right = x0 + w - 12, top = y0 + 28, bottom = y0 + h - 40;
  auto tx = [&](double v) { return spec.log_x ? std::log10(v) : v; };
  auto ty = [&](double v) { return spec.log_y ? std::log10(v) : v; };

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if ((spec.log_x && !(s.x[i] > 0)) || (spec.log_y && !(s.y[i] > 0))) continue;
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      xmin = std::min(xmin, tx(s.x[i]));
      xmax = std::max(xmax, tx(s.x[i]));
      ymin = std::min(ymin, ty(s.y[i]));
      ymax = std::max(ymax, ty(s.y[i]));
    }
  }
  if (!std::isfinite(xmin)) xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymin -= 0.5, ymax += 0.5;
  const double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;
  auto px = [&](double v) { return left + (tx(v) - xmin) / (xmax - xmin) * (right - left); };
  auto py = [&](double v) { return bottom - (ty(v) - ymin) / (ymax - ymin) * (bottom - top); };

  os << "<rect x=\"" << fmt(left, 6) << "\" y=\"" << fmt(top, 6) << "\" width=\"" << fmt(right - left, 6)
     << "\" height=\"" << fmt(bottom - top, 6) << "\" fill=\"none\" stroke=\"#444\" stroke-width=\"0.8\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double fx = xmin + (xmax - xmin) * k / 4.0;
    const double fy = ymin + (ymax - ymin) * k / 4.0;
    const double sx = left + (right - left) * k / 4.0;
    const double sy = bottom - (bottom - top) * k / 4.0;
    os << "<text x=\"" << fmt(sx, 6) << "\" y=\"" << fmt(bottom + 14, 6)
       << "\" font-size=\"10\" text-anchor=\"middle\">" << fmt(spec.log_x ? std::pow(10.0, fx) : fx, 3) << "</text>\n";
    os << "<text x=\"" << fmt(left - 4, 6) << "\" y=\"" << fmt(sy + 3, 6)
       << "\" font-size=\"10\" text-anchor=\"end\">" << fmt(spec.log_y ? std::pow(10.0, fy) : fy, 3) << "</text>\n";
  }
  os << "<text x=\"" << fmt((left + right) / 2, 6) << "\" y=\"" << fmt(y0 + 16, 6)
     << "\" font-size=\"12\" text-anchor=\"middle\">" << escape(spec.title) << "</text>\n";
  os << "<text x=\"" << fmt((left + right) / 2, 6) << "\" y=\"" << fmt(bottom + 30, 6)
     << "\" font-size=\"11\" text-anchor=\"middle\">" << escape(spec.x_label) << "</text>\n";
  os << "<text x=\"" << fmt(x0 + 12, 6) << "\" y=\"" << fmt((top + bottom) / 2, 6)
     << "\" font-size=\"11\" text-anchor=\"middle\" transform=\"rotate(-90 " << fmt(x0 + 12, 6) << ' '
     << fmt((top + bottom) / 2, 6) << ")\">" << escape(spec.y_label) << "</text>\n";

  for (const auto& s : series) {
    os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"" << fmt(s.width) << "\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if ((spec.log_x && !(s.x[i] > 0)) || (spec.log_y && !(s.y[i] > 0))) continue;
      os << fmt(px(s.x[i]), 6) << ',' << fmt(py(s.y[i]), 6) << ' ';
    }
    os << "\"/>\n";
    if (s.markers) {
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if ((spec.log_x && !(s.x[i] > 0)) || (spec.log_y && !(s.y[i] > 0))) continue;
        os << "<circle cx=\"" << fmt(px(s.x[i]), 6) << "\" cy=\"" << fmt(py(s.y[i]), 6) << "\" r=\"2.5\" fill=\""
           << s.color << "\"/>\n";
      }
    }
  }

  double ly = top + 12;
  for (const auto& s : series) {
    if (s.label.empty()) continue;
    os << "<line x1=\"" << fmt(right - 110, 6) << "\" y1=\"" << fmt(ly - 3, 6) << "\" x2=\"" << fmt(right - 94, 6)
       << "\" y2=\"" << fmt(ly - 3, 6) << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << fmt(right - 90, 6) << "\" y=\"" << fmt(ly, 6) << "\" font-size=\"10\">" << escape(s.label)
       << "</text>\n";
    ly += 12;
  }
  double ny = bottom - 6;
  for (auto it = spec.notes.rbegin(); it != spec.notes.rend(); ++it) {
    os << "<text x=\"" << fmt(left + 6, 6) << "\" y=\"" << fmt(ny, 6) << "\" font-size=\"10\">" << escape(*it)
       << "</text>\n";
    ny -= 12;
  }
}

std::string header(double w, double h) {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
         "width=\"" + fmt(w, 6) + "\" height=\"" + fmt(h, 6) + "\" viewBox=\"0 0 " + fmt(w, 6) + ' ' + fmt(h, 6) +
         "\" font-family=\"sans-serif\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

}  // namespace

std::string svg_plot(const PlotSpec& spec, std::span<const Series> series, double width, double height) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << header(width, height);
  render_axes(os, spec, series, 0, 0, width, height);
  os << "</svg>\n";
  return os.str();
}

std::string svg_grid(std::span<const Panel> panels, int columns, double panel_width, double panel_height,
                     const std::string& title) {
  const int rows = (static_cast<int>(panels.size()) + columns - 1) / columns;
  const double offset = title.empty() ? 0.0 : 24.0;
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << header(columns * panel_width, rows * panel_height + offset);
  if (!title.empty()) {
    os << "<text x=\"" << fmt(columns * panel_width / 2, 6)
       << "\" y=\"17\" font-size=\"14\" text-anchor=\"middle\">" << escape(title) << "</text>\n";
  }
  for (std::size_t k = 0; k < panels.size(); ++k) {
    const double x0 = static_cast<double>(k % columns) * panel_width;
    const double y0 = offset + static_cast<double>(k / columns) * panel_height;
    render_axes(os, panels[k].spec, panels[k].series, x0, y0, panel_width, panel_height);
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace skewfbm

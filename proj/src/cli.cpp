#include "skewfbm/cli.hpp"

#include "skewfbm/frac_young.hpp"
#include "skewfbm/io.hpp"
#include "skewfbm/skew_transform.hpp"
#include "skewfbm/solver.hpp"
#include "skewfbm/stats.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace skewfbm::cli {

namespace fs = std::filesystem;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& value) {
  double v = 0.0;
  const auto res = std::from_chars(value.data(), value.data() + value.size(), v);
  if (res.ec != std::errc() || res.ptr != value.data() + value.size()) {
    throw UsageError("field '" + key + "': expected a number, got '" + value + "'");
  }
  return v;
}

long to_long(const std::string& key, const std::string& value) {
  long v = 0;
  const auto res = std::from_chars(value.data(), value.data() + value.size(), v);
  if (res.ec != std::errc() || res.ptr != value.data() + value.size()) {
    throw UsageError("field '" + key + "': expected an integer, got '" + value + "'");
  }
  return v;
}

std::string tag(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

const char* palette(std::size_t k) {
  static const char* colors[] = {"#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"};
  return colors[k % 7];
}

std::vector<double> times(const TimeGrid& grid) {
  std::vector<double> t(static_cast<std::size_t>(grid.nodes()));
  for (Index i = 0; i < grid.nodes(); ++i) t[i] = grid.time(i);
  return t;
}

std::vector<double> to_std(const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

struct Simulation {
  SamplePath driver;
  SolutionPath exact;
  std::vector<SolutionPath> mollified;
};

Simulation simulate_one(const RunConfig& config, double hurst, double alpha, std::uint64_t seed) {
  const TimeGrid grid(config.horizon, config.steps);
  SamplePath driver = generate(config.generator, HurstParameter(hurst), grid, seed);
  const SkewParams params(alpha);
  SolutionPath exact = solve_exact(params, config.x0, driver);
  const double residual = transform_identity_residual(exact, driver);
  if (!(residual <= 1e-12)) {
    throw std::runtime_error("exact solution violates the transform identity (residual " + format_double(residual) +
                             ")");
  }
  std::vector<SolutionPath> mollified;
  for (int n : config.n_list) mollified.push_back(solve_mollified(params.with_n(n), config.x0, driver));
  return {std::move(driver), std::move(exact), std::move(mollified)};
}

Panel solution_panel(const Simulation& sim, double hurst, double alpha, const std::string& title) {
  Panel panel;
  panel.spec.title = title;
  panel.spec.x_label = "t";
  panel.spec.y_label = "x_t";
  const auto t = times(sim.driver.grid);
  for (std::size_t k = 0; k < sim.mollified.size(); ++k) {
    panel.series.push_back({"n=" + std::to_string(*sim.mollified[k].n), t, to_std(sim.mollified[k].path.values),
                            palette(k), 0.8});
  }
  panel.series.push_back({"exact", t, to_std(sim.exact.path.values), "#1f77b4", 1.2});
  panel.spec.notes.push_back("H=" + tag(hurst) + "  alpha=" + tag(alpha));
  return panel;
}

std::string panel_title(double hurst, double alpha) {
  if (hurst == 0.5) return "SBm, alpha = " + tag(alpha);
  return "x_t for H = " + tag(hurst) + ", alpha = " + tag(alpha);
}

template <typename F>
int guarded(std::ostream& out, F&& body) {
  try {
    return body();
  } catch (const IoError& e) {
    out << "I/O error: " << e.what() << '\n';
    return kIoError;
  } catch (const fs::filesystem_error& e) {
    out << "I/O error: " << e.what() << '\n';
    return kIoError;
  } catch (const UsageError& e) {
    out << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const DomainError& e) {
    out << "usage error: " << e.what() << '\n';
    return kUsageError;
  }
}

}  // namespace

std::vector<int> parse_n_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw UsageError("field 'n-list': empty entry in '" + text + "'");
    const long v = to_long("n-list", item);
    if (v < 1) throw UsageError("field 'n-list': entries must be >= 1");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

void apply_setting(RunConfig& config, const std::string& raw_key, const std::string& raw_value) {
  std::string key = trim(raw_key);
  std::replace(key.begin(), key.end(), '_', '-');
  const std::string value = trim(raw_value);
  if (key == "hurst") {
    config.hurst = to_double(key, value);
  } else if (key == "alpha") {
    config.alpha = to_double(key, value);
  } else if (key == "x0") {
    config.x0 = to_double(key, value);
  } else if (key == "horizon") {
    config.horizon = to_double(key, value);
  } else if (key == "steps") {
    config.steps = to_long(key, value);
  } else if (key == "seed") {
    const long s = to_long(key, value);
    if (s < 0) throw UsageError("field 'seed': must be nonnegative");
    config.seed = static_cast<std::uint64_t>(s);
  } else if (key == "n-list") {
    config.n_list = parse_n_list(value);
  } else if (key == "generator") {
    if (value == "cholesky") {
      config.generator = Generator::cholesky;
    } else if (value == "circulant") {
      config.generator = Generator::circulant;
    } else {
      throw UsageError("field 'generator': expected cholesky or circulant, got '" + value + "'");
    }
  } else if (key == "out") {
    config.output_dir = value;
  } else if (key == "gamma") {
    config.gamma = to_double(key, value);
  } else if (key == "order-tilde") {
    config.order_tilde = to_double(key, value);
  } else if (key == "figure-grid") {
    if (value != "true" && value != "false") throw UsageError("field 'figure-grid': expected true or false");
    config.figure_grid = value == "true";
  } else {
    throw UsageError("unknown field '" + key + "'");
  }
}

RunConfig parse_config_text(const std::string& text, RunConfig base, const std::string& source) {
  std::stringstream ss(text);
  std::string line;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(source + ":" + std::to_string(line_no) + ": expected key=value, got '" + trim(line) + "'");
    }
    try {
      apply_setting(base, line.substr(0, eq), line.substr(eq + 1));
    } catch (const UsageError& e) {
      throw UsageError(source + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return base;
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), std::move(base), path);
}

void validate(const RunConfig& c) {
  auto check = [](bool ok, const std::string& msg) {
    if (!ok) throw UsageError(msg);
  };
  check(c.hurst >= 0.5 && c.hurst < 1.0, "--hurst must lie in [0.5, 1)");
  check(c.alpha > 0.0 && c.alpha < 1.0, "--alpha must lie in (0, 1)");
  check(std::isfinite(c.x0), "--x0 must be finite");
  check(c.horizon > 0.0, "--horizon must be positive");
  check(c.steps >= 1, "--steps must be >= 1");
  check(!c.n_list.empty(), "--n-list must not be empty");
  for (std::size_t k = 0; k < c.n_list.size(); ++k) {
    check(c.n_list[k] >= 1, "--n-list entries must be >= 1");
    check(k == 0 || c.n_list[k] > c.n_list[k - 1], "--n-list must be strictly increasing");
  }
  check(c.gamma > 0.0 && c.gamma < 1.0, "--gamma must lie in (0, 1)");
  if (c.order_tilde) check(*c.order_tilde > 0.0 && *c.order_tilde < 1.0, "--order-tilde must lie in (0, 1)");
}

std::vector<FigurePanel> figure_panels(const RunConfig& config) {
  return {
      {0.5, 0.99, config.seed},      {0.5, 0.01, config.seed},      {0.5, 0.5, config.seed},
      {0.75, 0.1, config.seed + 1},  {0.75, 0.5, config.seed + 1},  {0.75, 0.99, config.seed + 1},
      {0.95, 0.1, config.seed + 2},  {0.95, 0.5, config.seed + 2},  {0.95, 0.99, config.seed + 2},
  };
}

int cmd_fbm(const RunConfig& config, std::ostream& out) {
  return guarded(out, [&] {
    validate(config);
    const HurstParameter H(config.hurst);
    const TimeGrid grid(config.horizon, config.steps);
    const SamplePath path = generate(config.generator, H, grid, config.seed);
    const fs::path dir(config.output_dir);
    write_atomic(dir / "fbm.csv", path_csv(path));

    PlotSpec spec;
    spec.title = "fBm H = " + tag(config.hurst);
    if (H.is_brownian()) spec.title += " (limit case H=0.5: Brownian motion)";
    spec.x_label = "t";
    spec.y_label = "B_t";
    spec.notes.push_back(std::string(to_string(config.generator)) + ", seed " + std::to_string(config.seed) +
                         ", N = " + std::to_string(config.steps));
    const std::vector<Series> series{{"", times(grid), to_std(path.values)}};
    write_atomic(dir / "fbm.svg", svg_plot(spec, series));

    out << "fbm: H=" << config.hurst << (H.is_brownian() ? " (limit case H=0.5, Brownian motion)" : "") << ", N="
        << config.steps << ", generator=" << to_string(config.generator) << ", seed=" << config.seed << '\n';
    out << "wrote " << (dir / "fbm.csv").string() << " and " << (dir / "fbm.svg").string() << '\n';
    return static_cast<int>(kSuccess);
  });
}

int cmd_simulate(const RunConfig& config, std::ostream& out) {
  return guarded(out, [&] {
    validate(config);
    const fs::path dir(config.output_dir);
    if (!config.figure_grid) {
      const Simulation sim = simulate_one(config, config.hurst, config.alpha, config.seed);
      write_atomic(dir / "simulate.csv", solution_csv(sim.driver, sim.exact, sim.mollified));
      const Panel panel = solution_panel(sim, config.hurst, config.alpha, panel_title(config.hurst, config.alpha));
      write_atomic(dir / "simulate.svg", svg_plot(panel.spec, panel.series));
      double gap = 0.0;
      for (const auto& m : sim.mollified) gap = std::max(gap, (m.path.values - sim.exact.path.values).cwiseAbs().maxCoeff());
      out << "simulate: H=" << config.hurst << " alpha=" << config.alpha << " x0=" << config.x0
          << " max |x_mollified - x_exact| = " << format_double(gap) << '\n';
      out << "wrote " << (dir / "simulate.csv").string() << '\n';
      return static_cast<int>(kSuccess);
    }

    std::vector<Panel> panels;
    for (const auto& fp : figure_panels(config)) {
      const Simulation sim = simulate_one(config, fp.hurst, fp.alpha, fp.seed);
      const std::string stem = "figure_H" + tag(fp.hurst) + "_alpha" + tag(fp.alpha);
      write_atomic(dir / (stem + ".csv"), solution_csv(sim.driver, sim.exact, sim.mollified));
      Panel panel = solution_panel(sim, fp.hurst, fp.alpha, panel_title(fp.hurst, fp.alpha));
      write_atomic(dir / (stem + ".svg"), svg_plot(panel.spec, panel.series));
      double gap = 0.0;
      for (const auto& m : sim.mollified) gap = std::max(gap, (m.path.values - sim.exact.path.values).cwiseAbs().maxCoeff());
      out << stem << ": seed " << fp.seed << ", max mollified gap " << format_double(gap) << '\n';
      panels.push_back(std::move(panel));
    }
    write_atomic(dir / "figures.svg", svg_grid(panels, 3, 360, 240, "Pathwise solutions of dx = sigma(x) dB^H"));
    out << "wrote " << panels.size() << " panels and " << (dir / "figures.svg").string() << '\n';
    return static_cast<int>(kSuccess);
  });
}

int cmd_converge(const RunConfig& config, std::ostream& out) {
  return guarded(out, [&] {
    validate(config);
    if (config.n_list.size() < 4) throw UsageError("converge needs at least 4 values in --n-list");
    const TimeGrid grid(config.horizon, config.steps);
    const SamplePath driver = generate(config.generator, HurstParameter(config.hurst), grid, config.seed);
    const SkewParams params(config.alpha);
    const ConvergenceReport report = convergence_study(params, config.x0, driver, config.n_list);

    const fs::path dir(config.output_dir);
    write_atomic(dir / "convergence.csv", convergence_csv(report));

    PlotSpec spec;
    spec.title = "sup-node error of the mollified scheme";
    spec.x_label = "n";
    spec.y_label = "sup |x^(n) - x|";
    spec.log_x = true;
    spec.log_y = true;
    Series errors{"sup error", {}, {}, "#1f77b4", 1.2, true};
    Series bound{"gap bound", {}, {}, "#d62728", 0.8, false};
    for (const auto& e : report.entries) {
      errors.x.push_back(e.n);
      errors.y.push_back(e.sup_error);
      bound.x.push_back(e.n);
      bound.y.push_back(sup_gap(params.with_n(e.n), 10000).gap_inverse);
    }
    if (report.slope) {
      std::ostringstream note;
      note << "fitted slope " << std::fixed << std::setprecision(3) << *report.slope;
      spec.notes.push_back(note.str());
    } else {
      spec.notes.push_back("degenerate: zero error");
    }
    const std::vector<Series> series{errors, bound};
    write_atomic(dir / "convergence.svg", svg_plot(spec, series));

    for (const auto& e : report.entries) out << "n=" << e.n << " sup_error=" << format_double(e.sup_error) << '\n';
    if (report.slope) {
      out << "slope = " << std::fixed << std::setprecision(4) << *report.slope << std::defaultfloat
          << ", max n*sup_error = " << format_double(report.constant) << '\n';
    } else {
      out << "degenerate: zero error\n";
    }
    return static_cast<int>(kSuccess);
  });
}

int cmd_verify(const RunConfig& config, std::ostream& out) {
  return guarded(out, [&] {
    validate(config);
    enum class Status { pass, fail, skipped };
    struct Row {
      std::string name;
      Status status;
      std::string detail;
    };
    std::vector<Row> rows;
    auto add = [&](std::string name, bool ok, std::string detail) {
      rows.push_back({std::move(name), ok ? Status::pass : Status::fail, std::move(detail)});
    };

    const SkewParams params(config.alpha);
    const HurstParameter H(config.hurst);
    const TimeGrid grid(config.horizon, config.steps);
    const SamplePath driver = generate(config.generator, H, grid, config.seed);

    {
      double worst = 0.0;
      for (double a : {0.0, 1.0}) {
        for (int n : config.n_list) {
          const SkewParams p(config.alpha, a, n);
          for (int i = 0; i < 10000; ++i) {
            const double y = -3.0 + 6.0 * i / 9999.0;
            worst = std::max(worst, std::abs(lambda_exact(p, lambda_exact_inv(p, y)) - y));
            worst = std::max(worst, std::abs(lambda_n(p, lambda_n_inv(p, y)) - y));
          }
        }
      }
      add("transform round trips", worst <= 1e-12, "max error " + format_double(worst) + " <= 1e-12");
    }

    {
      double worst = 0.0;
      std::vector<double> ns, gaps;
      for (int n : config.n_list) {
        const SupGap g = sup_gap(params.with_n(n), 100000);
        worst = std::max(worst, n * std::max(g.gap_lambda, g.gap_inverse));
        if (g.gap_inverse > 0.0) {
          ns.push_back(n);
          gaps.push_back(g.gap_inverse);
        }
      }
      const double c = gap_constant(config.alpha);
      add("transform gap n*sup <= C(alpha)", worst <= 1.05 * c,
          "max n*gap " + format_double(worst) + ", C(alpha) " + format_double(c));
      if (ns.size() >= 2) {
        const double slope = loglog_slope(ns, gaps);
        add("transform gap rate", std::abs(slope + 1.0) <= 0.05, "slope " + format_double(slope));
      } else {
        rows.push_back({"transform gap rate", Status::skipped, "alpha = 1/2: sigma_n = sigma, gaps vanish"});
      }
    }

    {
      const double order_tilde = config.order_tilde.value_or(default_order_tilde(config.gamma));
      try {
        const FracBoundReport r = verify_frac_bound(driver, H, order_tilde, config.gamma, 1000, config.seed);
        add("fractional derivative bound", r.passed, "max ratio " + format_double(r.max_ratio) + " <= 1.01");
      } catch (const DomainError& e) {
        rows.push_back({"fractional derivative bound", Status::skipped, e.what()});
      }
    }

    {
      const TimeGrid smooth_grid(1.0, 4096);
      const SamplePath f = sample_function(smooth_grid, [](double t) { return t; });
      const SamplePath g = sample_function(smooth_grid, [](double t) { return t * t; });
      const YoungPair pair{f, g, 0.5};
      const double frac = young_integral_fractional(pair, 0, 4096);
      const double riem = young_integral_riemann(pair, 0, 4096);
      add("Young integral: fractional vs Riemann (smooth)", std::abs(frac - riem) <= 1e-3 * std::abs(riem),
          "fractional " + format_double(frac) + ", Riemann " + format_double(riem));
    }

    if (config.hurst > 0.5) {
      const double mu = 0.5 * (0.5 + config.hurst);
      const YoungPair pair{driver, driver, 0.5, mu, mu};
      const Index n = grid.steps();
      const double frac = young_integral_fractional(pair, 0, n);
      const double chain = 0.5 * (driver[n] * driver[n] - driver[0] * driver[0]);
      add("Young integral: chain rule for B dB", std::abs(frac - chain) <= 1e-3 * std::abs(chain),
          "fractional " + format_double(frac) + ", (B_T^2 - B_0^2)/2 " + format_double(chain));
    } else {
      rows.push_back({"Young integral: chain rule for B dB", Status::skipped, "needs H > 1/2 for a Young pair"});
    }

    {
      const SolutionPath exact = solve_exact(params, config.x0, driver);
      const double r = transform_identity_residual(exact, driver);
      add("transform identity of exact solution", r <= 1e-12, "residual " + format_double(r));

      bool dominated = true;
      std::string detail;
      for (int n : config.n_list) {
        const SolutionPath m = solve_mollified(params.with_n(n), config.x0, driver);
        const double err = (m.path.values - exact.path.values).cwiseAbs().maxCoeff();
        const double bound = sup_gap(params.with_n(n), 100000).gap_inverse;
        if (err > bound * (1.0 + 1e-12) + 1e-15) {
          dominated = false;
          detail = "n=" + std::to_string(n) + ": " + format_double(err) + " > " + format_double(bound);
        }
      }
      add("mollified error <= transform gap", dominated, dominated ? "all n" : detail);
    }

    bool all = true;
    out << std::left << std::setw(48) << "check" << std::setw(9) << "status" << "detail\n";
    for (const auto& row : rows) {
      const char* status = row.status == Status::pass ? "PASS" : row.status == Status::fail ? "FAIL" : "SKIPPED";
      if (row.status == Status::fail) all = false;
      out << std::left << std::setw(48) << row.name << std::setw(9) << status << row.detail << '\n';
    }
    out << (all ? "verify: all checks passed\n" : "verify: FAILED\n");
    return static_cast<int>(all ? kSuccess : kVerificationFailure);
  });
}

}  // namespace skewfbm::cli

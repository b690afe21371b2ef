// Acceptance gate: one PASS/FAIL line per criterion. `acceptance <k>` runs criterion k only.
#include "skewfbm/cli.hpp"
#include "skewfbm/fbm.hpp"
#include "skewfbm/frac_young.hpp"
#include "skewfbm/io.hpp"
#include "skewfbm/skew_transform.hpp"
#include "skewfbm/solver.hpp"
#include "skewfbm/stats.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace skewfbm;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok;
  std::string detail;
};

std::string fmt(double v) { return format_double(v); }

double max_rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

Outcome round_trips() {
  double worst = 0.0;
  for (double alpha : {0.1, 0.25, 0.4, 0.5, 0.6, 0.99}) {
    for (double a : {0.0, 1.0}) {
      for (int n : {1, 10, 100}) {
        const SkewParams p(alpha, a, n);
        for (int k = 0; k < 10000; ++k) {
          const double y = -5.0 + 10.0 * k / 9999.0;
          worst = std::max(worst, std::abs(lambda_exact(p, lambda_exact_inv(p, y)) - y));
          worst = std::max(worst, std::abs(lambda_n(p, lambda_n_inv(p, y)) - y));
        }
      }
    }
  }
  return {worst <= 1e-12, "max |Lambda(Lambda^-1(y)) - y| over both families " + fmt(worst) + " (tol 1e-12)"};
}

Outcome gap_rate() {
  const double alpha = 0.4;
  const double constant = gap_constant(alpha);
  std::vector<double> ns, gaps;
  double worst_scaled = 0.0, spot = 0.0;
  for (int k = 1; k <= 10; ++k) {
    const int n = 1 << k;
    const SupGap g = sup_gap(SkewParams(alpha, 0.0, n), 20000);
    ns.push_back(n);
    gaps.push_back(g.gap_inverse);
    worst_scaled = std::max(worst_scaled, n * g.gap_inverse);
  }
  spot = sup_gap(SkewParams(alpha, 0.0, 10), 20000).gap_inverse;
  const double slope = loglog_slope(ns, gaps);
  char spot_text[32];
  std::snprintf(spot_text, sizeof spot_text, "%.3g", spot);
  const bool ok = std::abs(slope + 1.0) <= 0.05 && worst_scaled <= 1.05 * constant && std::string(spot_text) == "0.0189";
  return {ok, "slope " + fmt(slope) + ", max n*gap " + fmt(worst_scaled) + " vs C(alpha) " + fmt(constant) +
                  ", gap(n=10) " + spot_text};
}

Outcome scheme_convergence() {
  const SamplePath B = generate_circulant(HurstParameter(0.75), TimeGrid(1.0, 1 << 12), 20160901);
  const std::vector<int> ns{8, 16, 32, 64, 128};
  const ConvergenceReport r = convergence_study(SkewParams(0.4), 0.0, B, ns);
  bool dominated = true;
  for (const auto& e : r.entries) {
    const double bound = sup_gap(SkewParams(0.4, 0.0, e.n), 20000).gap_inverse;
    dominated = dominated && e.sup_error <= bound * (1 + 1e-12) + 1e-15;
  }
  const bool ok = r.slope && std::abs(*r.slope + 1.0) <= 0.15 && dominated;
  return {ok, "slope " + (r.slope ? fmt(*r.slope) : std::string("n/a")) +
                  (dominated ? ", sup_error <= gap_inverse for all n" : ", domination violated")};
}

Outcome identity() {
  double worst = 0.0;
  for (double h : {0.6, 0.75, 0.95}) {
    const CirculantFbm gen(HurstParameter(h), TimeGrid(1.0, 1 << 12));
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      const SamplePath B = gen.sample(seed);
      for (double alpha : {0.1, 0.4, 0.99}) {
        worst = std::max(worst, transform_identity_residual(solve_exact(SkewParams(alpha), 0.0, B), B));
      }
    }
  }
  return {worst <= 1e-12, "max residual " + fmt(worst) + " over 900 solutions (tol 1e-12)"};
}

Outcome young_cross() {
  const Index N = 1 << 12;
  const TimeGrid grid(1.0, N);
  using Fn = std::function<double(double)>;
  const std::vector<Fn> fs_{[](double t) { return 1.0 + t; }, [](double t) { return 2.0 + t * t; },
                            [](double t) { return 1.0 + 0.5 * std::sin(3.0 * t); },
                            [](double t) { return 2.0 + std::cos(2.0 * t); }, [](double t) { return 1.0 + t * t * t - 0.5 * t; }};
  const std::vector<Fn> gs_{[](double t) { return t; }, [](double t) { return t * t; },
                            [](double t) { return t * t * t + t; }, [](double t) { return std::sin(t) + t; }};
  double smooth = 0.0, smooth_chain = 0.0;
  for (const auto& f : fs_) {
    for (const auto& g : gs_) {
      const YoungPair pair{sample_function(grid, f), sample_function(grid, g), 0.5};
      smooth = std::max(smooth, max_rel(young_integral_fractional(pair, 0, N), young_integral_riemann(pair, 0, N)));
    }
    const SamplePath fp = sample_function(grid, f);
    const YoungPair self{fp, fp, 0.5};
    smooth_chain = std::max(smooth_chain, max_rel(young_integral_fractional(self, 0, N),
                                                  0.5 * (fp[N] * fp[N] - fp[0] * fp[0])));
  }
  double rough = 0.0, rough_chain = 0.0, corrected = 0.0;
  const double holder = (0.5 + 0.75) / 2.0;
  const CirculantFbm gen(HurstParameter(0.75), grid);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const SamplePath b = gen.sample(5000 + seed);
    const YoungPair pair{b, b, 0.5, holder, holder};
    const double frac = young_integral_fractional(pair, 0, N);
    const double riemann = young_integral_riemann(pair, 0, N);
    rough = std::max(rough, max_rel(frac, riemann));
    // diagnostic only: the left sum of B dB misses half the discrete quadratic variation
    const double qv = (b.values.tail(N) - b.values.head(N)).squaredNorm();
    corrected = std::max(corrected, max_rel(frac, riemann + 0.5 * qv));
    rough_chain = std::max(rough_chain, max_rel(frac, 0.5 * (b[N] * b[N] - b[0] * b[0])));
  }
  const bool ok = smooth <= 1e-3 && rough <= 1e-3 && smooth_chain <= 1e-3 && rough_chain <= 1e-3;
  return {ok, "fractional vs Riemann: smooth " + fmt(smooth) + ", fBm " + fmt(rough) + "; chain rule: smooth " +
                  fmt(smooth_chain) + ", fBm " + fmt(rough_chain) + " (tol 1e-3 relative); fBm vs Riemann + QV/2 " +
                  fmt(corrected)};
}

Outcome frac_bound() {
  const HurstParameter H(0.75);
  const CirculantFbm gen(H, TimeGrid(1.0, 1 << 12));
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const FracBoundReport r = verify_frac_bound(gen.sample(seed), H, 0.45, 0.65, 1000, seed);
    worst = std::max(worst, r.max_ratio);
  }
  return {worst <= 1.01, "max observed/bound ratio " + fmt(worst) + " over 10 x 1000 pairs (tol 1.01)"};
}

Outcome generator_exactness() {
  const Index N = 1 << 10;
  const TimeGrid grid(1.0, N);
  const Index probes[8][2] = {{1, 1}, {1, 2}, {256, 512}, {512, 512}, {100, 900}, {700, 1024}, {1024, 1024}, {3, 1000}};
  const int paths = 10000;
  std::string detail;
  bool ok = true;
  for (double h : {0.5, 0.75, 0.95}) {
    const HurstParameter H(h);
    const CirculantFbm circ(H, grid);
    const CholeskyFbm chol(H, grid);
    double sum[8] = {}, sum_sq[8] = {};
    std::vector<double> terminal_circ, terminal_chol;
    for (int k = 0; k < paths; ++k) {
      const SamplePath b = circ.sample(static_cast<std::uint64_t>(k) + 1);
      for (int j = 0; j < 8; ++j) {
        const double prod = b[probes[j][0]] * b[probes[j][1]];
        sum[j] += prod;
        sum_sq[j] += prod * prod;
      }
      terminal_circ.push_back(b[N]);
      terminal_chol.push_back(chol.terminal_value(static_cast<std::uint64_t>(k) + 1000001));
    }
    double worst_z = 0.0;
    for (int j = 0; j < 8; ++j) {
      const double mean = sum[j] / paths;
      const double se = std::sqrt((sum_sq[j] / paths - mean * mean) / (paths - 1));
      const double target = fbm_covariance(H, grid.time(probes[j][0]), grid.time(probes[j][1]));
      worst_z = std::max(worst_z, std::abs(mean - target) / se);
    }
    const KsResult ks = ks_two_sample(terminal_circ, terminal_chol);
    ok = ok && worst_z <= 4.0 && ks.p_value > 0.01;
    detail += (detail.empty() ? "" : "; ") + std::string("H=") + fmt(h) + ": max |z| " + fmt(worst_z) + ", KS p " +
              fmt(ks.p_value);
  }
  return {ok, detail};
}

Outcome figures() {
  const fs::path dir = fs::current_path() / "acceptance_figures";
  fs::remove_all(dir);
  cli::RunConfig config;
  config.figure_grid = true;
  config.output_dir = dir.string();
  std::ostringstream log;
  if (cli::cmd_simulate(config, log) != cli::kSuccess) return {false, "cmd_simulate failed: " + log.str()};
  int files = 0;
  bool finite = true, coincide = true;
  for (const auto& panel : cli::figure_panels(config)) {
    char stem[64];
    std::snprintf(stem, sizeof stem, "figure_H%.2f_alpha%.2f", panel.hurst, panel.alpha);
    const fs::path csv = dir / (std::string(stem) + ".csv");
    const fs::path svg = dir / (std::string(stem) + ".svg");
    if (!fs::exists(csv) || !fs::exists(svg)) return {false, std::string("missing ") + stem};
    files += 2;
    std::ifstream in(csv);
    std::string line;
    std::getline(in, line);
    Index rows = 0;
    while (std::getline(in, line)) {
      std::vector<double> cols;
      std::stringstream ss(line);
      std::string cell;
      while (std::getline(ss, cell, ',')) cols.push_back(std::strtod(cell.c_str(), nullptr));
      for (double v : cols) finite = finite && std::isfinite(v);
      if (panel.alpha == 0.5) {
        for (std::size_t c = 3; c < cols.size(); ++c) coincide = coincide && cols[c] == cols[2];
      }
      ++rows;
    }
    finite = finite && rows == config.steps + 1;
  }
  const bool grid_svg = fs::exists(dir / "figures.svg");
  const bool ok = finite && coincide && grid_svg && files == 18;
  return {ok, std::to_string(files) + " panel files + figures.svg in " + dir.string() +
                  (finite ? ", all columns finite" : ", non-finite or short column") +
                  (coincide ? ", alpha=0.5 exact/mollified coincide" : ", alpha=0.5 mismatch")};
}

struct Criterion {
  const char* name;
  double budget_seconds;
  Outcome (*run)();
};

const Criterion kCriteria[] = {
    {"transform round-trip", 1.0, round_trips},
    {"transform gap rate and constant", 5.0, gap_rate},
    {"mollified scheme convergence", 10.0, scheme_convergence},
    {"transform identity of exact solutions", 30.0, identity},
    {"Young integral cross-validation", 60.0, young_cross},
    {"fractional derivative bound", 60.0, frac_bound},
    {"fBm generator exactness", 120.0, generator_exactness},
    {"figure reproduction", 60.0, figures},
};

bool run_one(int k) {
  const Criterion& c = kCriteria[k - 1];
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = c.run();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = seconds < c.budget_seconds;
  const bool ok = o.ok && in_time;
  std::printf("[%s] %d. %s: %s; %.2f s (budget %.0f s)\n", ok ? "PASS" : "FAIL", k, c.name, o.detail.c_str(),
              seconds, c.budget_seconds);
  std::fflush(stdout);
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  constexpr int count = static_cast<int>(std::size(kCriteria));
  bool all = true;
  if (argc > 1) {
    for (int i = 1; i < argc; ++i) {
      const int k = std::atoi(argv[i]);
      if (k < 1 || k > count) {
        std::fprintf(stderr, "unknown criterion '%s' (1..%d)\n", argv[i], count);
        return 2;
      }
      all = run_one(k) && all;
    }
  } else {
    for (int k = 1; k <= count; ++k) all = run_one(k) && all;
  }
  return all ? 0 : 1;
}

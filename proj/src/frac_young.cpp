#include "skewfbm/frac_young.hpp"

#include "skewfbm/fbm.hpp"
#include "skewfbm/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace skewfbm {

namespace {

// Gauss-Legendre rule mapped to [0, 1].
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

Rule gauss_legendre(int n) {
  Rule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = 0.5 * (1.0 - x);
    rule.weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

double smoothstep(double u) { return u * u * u * (10.0 + u * (-15.0 + 6.0 * u)); }
double smoothstep_prime(double u) { return 30.0 * u * u * (1.0 - u) * (1.0 - u); }

// (k + theta)^q - (k - 1 + theta)^q for k >= 1, theta^q for k = 0.
double cell_moment(Index k, double theta, double q) {
  if (k == 0) return theta == 0.0 ? 0.0 : std::pow(theta, q);
  const double lo = static_cast<double>(k - 1) + theta;
  if (lo == 0.0) return 1.0;
  return std::pow(lo, q) * std::expm1(q * std::log1p(1.0 / lo));
}

// sum_{j=0}^{m} slopes[j] * cell_moment(m - j, theta); times h^q / q this is the exact
// integral of f'(u) (r - u)^{q-1} over [a, r] for a piecewise-linear f.
double ramp_sum(const Vector& slopes, Index m, double theta, double q) {
  double acc = 0.0;
  const Index last = std::min<Index>(m, slopes.size() - 1);
  for (Index j = 0; j <= last; ++j) acc += slopes[j] * cell_moment(m - j, theta, q);
  return acc;
}

// Same sum for every m = 0..slopes.size() - 1 at a fixed theta, via one moment table.
Vector ramp_sums(const Vector& slopes, double theta, double q) {
  const Index n = slopes.size();
  Vector table(n);
  for (Index k = 0; k < n; ++k) table[k] = cell_moment(k, theta, q);
  Vector out(n);
  for (Index m = 0; m < n; ++m) {
    double acc = 0.0;
    for (Index j = 0; j <= m; ++j) acc += slopes[j] * table[m - j];
    out[m] = acc;
  }
  return out;
}

Index node_index(const TimeGrid& grid, double t, const char* what) {
  const double pos = t / grid.dt();
  const double rounded = std::round(pos);
  if (std::abs(pos - rounded) > 1e-9 || rounded < 0 || rounded > static_cast<double>(grid.steps())) {
    throw DomainError(std::string(what) + " must be a grid node");
  }
  return static_cast<Index>(rounded);
}

// Splits a nonnegative offset (in units of dt) into cell index and fraction.
void split_offset(double pos, Index& m, double& theta) {
  double whole = std::floor(pos);
  theta = pos - whole;
  if (theta > 1.0 - 1e-12) {
    whole += 1.0;
    theta = 0.0;
  } else if (theta < 1e-12) {
    theta = 0.0;
  }
  m = static_cast<Index>(whole);
}

Vector forward_slopes(const Vector& v, Index from, Index count, double h) {
  Vector s(count);
  for (Index j = 0; j < count; ++j) s[j] = (v[from + j + 1] - v[from + j]) / h;
  return s;
}

// Slopes of G(w) = g(b - w), cell j = [t_{b-j-1}, t_{b-j}].
Vector reflected_slopes(const Vector& v, Index b_idx, Index count, double h) {
  Vector s(count);
  for (Index j = 0; j < count; ++j) s[j] = (v[b_idx - j - 1] - v[b_idx - j]) / h;
  return s;
}

}  // namespace

double left_frac_deriv(const SamplePath& f, const FracDerivSpec& spec, double t) {
  if (spec.side != Side::left_from_a) throw DomainError("left_frac_deriv needs a left_from_a spec");
  if (!(t > spec.a) || t > spec.b) throw DomainError("left_frac_deriv: t must lie in (a, b]");
  const TimeGrid& grid = f.grid;
  if (t > grid.horizon() * (1.0 + 1e-12)) throw DomainError("left_frac_deriv: t beyond the path horizon");
  const Index a_idx = node_index(grid, spec.a, "left end a");
  const double h = grid.dt();
  const double p = spec.order;

  Index m;
  double theta;
  split_offset((t - spec.a) / h, m, theta);
  const Index cells = std::min<Index>(m + 1, grid.steps() - a_idx);
  const Vector slopes = forward_slopes(f.values, a_idx, cells, h);

  const double boundary = f[a_idx] * std::pow(t - spec.a, -p);
  const double integral = std::pow(h, 1.0 - p) / (1.0 - p) * ramp_sum(slopes, m, theta, 1.0 - p);
  return (boundary + integral) / std::tgamma(1.0 - p);
}

double right_frac_deriv_adjusted(const SamplePath& g, const FracDerivSpec& spec, double t) {
  if (spec.side != Side::right_from_b) throw DomainError("right_frac_deriv_adjusted needs a right_from_b spec");
  if (t < spec.a || !(t < spec.b)) throw DomainError("right_frac_deriv_adjusted: t must lie in [a, b)");
  if (t < 0.0) throw DomainError("right_frac_deriv_adjusted: t before the path start");
  const TimeGrid& grid = g.grid;
  const Index b_idx = node_index(grid, spec.b, "right end b");
  const double h = grid.dt();
  const double beta = spec.order;

  Index m;
  double theta;
  split_offset((spec.b - t) / h, m, theta);
  const Index cells = std::min<Index>(m + 1, b_idx);
  const Vector slopes = reflected_slopes(g.values, b_idx, cells, h);
  const double integral = std::pow(h, 1.0 - beta) / (1.0 - beta) * ramp_sum(slopes, m, theta, 1.0 - beta);
  return integral / std::tgamma(1.0 - beta);
}

double young_integral_fractional(const YoungPair& pair, Index a_idx, Index b_idx) {
  if (!(pair.f.grid == pair.g.grid)) throw DomainError("Young pair paths live on different grids");
  const TimeGrid& grid = pair.f.grid;
  if (a_idx < 0 || b_idx > grid.steps() || a_idx >= b_idx) throw DomainError("Young integral: empty sub-interval");
  if (!(pair.holder_f + pair.holder_g > 1.0)) throw DomainError("Young condition violated: mu + beta <= 1");
  const double p = pair.order;
  if (!(p > 1.0 - pair.holder_g && p < pair.holder_f) || !(p > 0.0 && p < 1.0)) {
    throw DomainError("Young integral: order outside the admissible window (1 - beta, mu)");
  }

  const Index cells = b_idx - a_idx;
  const double h = grid.dt();
  const Vector sf = forward_slopes(pair.f.values, a_idx, cells, h);
  const Vector sg = reflected_slopes(pair.g.values, b_idx, cells, h);
  const double f_a = pair.f[a_idx];

  // left:  D f(r)   = [f_a (r-a)^{-p} + h^{1-p}/(1-p) sum sf * moment_{1-p}] / Gamma(1-p)
  // right: D g(r)   = h^{p}/p sum sg * moment_{p} / Gamma(p)
  const double left_scale = std::pow(h, 1.0 - p) / (1.0 - p) / std::tgamma(1.0 - p);
  const double left_boundary = f_a / std::tgamma(1.0 - p);
  const double right_scale = std::pow(h, p) / p / std::tgamma(p);

  const Rule rule = gauss_legendre(8);
  double total = 0.0;

  if (cells > 1) {
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double u = rule.nodes[q];
      const double theta = smoothstep(u);
      const double weight = rule.weights[q] * smoothstep_prime(u) * h;
      const Vector left = ramp_sums(sf, theta, 1.0 - p);
      const Vector right = ramp_sums(sg, 1.0 - theta, p);
      double acc = 0.0;
      for (Index k = 1; k < cells; ++k) {
        const double df = left_boundary * std::pow((k + theta) * h, -p) + left_scale * left[k];
        const double dg = right_scale * right[cells - k - 1];
        acc += df * dg;
      }
      total += weight * acc;
    }
  }

  // First cell: theta = w(u)^{1/(1-p)} turns (theta h)^{-p} d theta into a smooth density.
  const Rule first = gauss_legendre(16);
  const double kappa = 1.0 / (1.0 - p);
  for (std::size_t q = 0; q < first.nodes.size(); ++q) {
    const double u = first.nodes[q];
    const double w = smoothstep(u);
    const double theta = std::pow(w, kappa);
    const double dtheta = kappa * std::pow(w, kappa - 1.0) * smoothstep_prime(u);
    const double df = left_boundary * std::pow(theta * h, -p) + left_scale * sf[0] * cell_moment(0, theta, 1.0 - p);
    const double dg = right_scale * ramp_sum(sg, cells - 1, 1.0 - theta, p);
    total += first.weights[q] * dtheta * h * df * dg;
  }
  // sign-free right derivative: the pairing carries (-1)^alpha (-1)^{1-alpha} = -1
  return -total;
}

double young_integral_riemann(const YoungPair& pair, Index a_idx, Index b_idx) {
  if (!(pair.f.grid == pair.g.grid)) throw DomainError("Young pair paths live on different grids");
  if (a_idx < 0 || b_idx > pair.f.grid.steps() || a_idx >= b_idx) {
    throw DomainError("Young integral: empty sub-interval");
  }
  double acc = 0.0;
  for (Index i = a_idx; i < b_idx; ++i) acc += pair.f[i] * (pair.g[i + 1] - pair.g[i]);
  return acc;
}

double default_order_tilde(double gamma) { return (1.0 + (1.0 - gamma)) / 2.0; }

FracBoundReport verify_frac_bound(const SamplePath& path, HurstParameter H, double order_tilde, double gamma,
                                  Index sample_pairs, std::uint64_t seed, double tolerance) {
  if (!(order_tilde > 0.0 && order_tilde < 1.0)) throw DomainError("order_tilde must lie in (0, 1)");
  if (!(gamma > 0.0 && gamma < 1.0)) throw DomainError("gamma must lie in (0, 1)");
  if (!(order_tilde + gamma > 1.0)) throw DomainError("fractional bound needs order_tilde + gamma > 1");
  if (!(gamma < H.value())) throw DomainError("fractional bound needs gamma < H");
  if (!(order_tilde > 1.0 - H.value())) throw DomainError("fractional bound needs order_tilde > 1 - H");
  if (sample_pairs < 1) throw DomainError("verify_frac_bound needs at least one pair");

  const TimeGrid& grid = path.grid;
  const Index n = grid.steps();
  const double h = grid.dt();
  const double beta = 1.0 - order_tilde;  // derivative order
  const double q = 1.0 - beta;

  FracBoundReport report;
  report.pairs = sample_pairs;
  report.holder_norm = holder_norm(path, gamma, 0, n);
  report.constant = (1.0 + (1.0 - order_tilde) / (order_tilde + gamma - 1.0)) / std::tgamma(order_tilde);

  Vector moments(n);
  for (Index k = 0; k < n; ++k) moments[k] = cell_moment(k, 0.0, q);
  const double scale = std::pow(h, q) / q / std::tgamma(1.0 - beta);

  NormalStream rng(seed);
  for (Index pair = 0; pair < sample_pairs; ++pair) {
    Index s = static_cast<Index>(rng.uniform() * static_cast<double>(n + 1));
    Index t = static_cast<Index>(rng.uniform() * static_cast<double>(n + 1));
    s = std::min(s, n);
    t = std::min(t, n);
    if (s == t) t = s == n ? s - 1 : s + 1;
    if (s > t) std::swap(s, t);

    // right derivative at node s of B - B_t on [., t]; cell j = [t-j-1, t-j]
    const Index m = t - s;
    double acc = 0.0;
    for (Index j = 0; j < m; ++j) acc += (path[t - j - 1] - path[t - j]) / h * moments[m - j];
    const double lhs = std::abs(scale * acc);
    const double rhs = report.constant * report.holder_norm * std::pow((t - s) * h, order_tilde + gamma - 1.0);
    const double ratio = lhs == 0.0 ? 0.0 : lhs / rhs;
    if (ratio > report.max_ratio) {
      report.max_ratio = ratio;
      report.worst_s = s;
      report.worst_t = t;
    }
  }
  report.passed = report.max_ratio <= 1.0 + tolerance;
  return report;
}

}  // namespace skewfbm

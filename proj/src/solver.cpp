#include "skewfbm/solver.hpp"

#include "skewfbm/stats.hpp"

#include <algorithm>
#include <cmath>

namespace skewfbm {

namespace {

void check_driver(const SamplePath& B) {
  if (B.label == PathLabel::exact_solution || B.label == PathLabel::mollified_solution) {
    throw DomainError("driver must be an fBm (or generic) path, not a solution");
  }
}

template <typename Inverse>
SolutionPath solve_with(const SkewParams& params, double x0, const SamplePath& B, Inverse&& inverse,
                        SolveMethod method, PathLabel label) {
  check_driver(B);
  const Index nodes = B.size();
  Vector x(nodes);
  std::optional<Index> restart;
  Index start = 0;
  double shift = 0.0;
  if (x0 != 0.0) {
    restart = first_zero_index(B, params, x0);
    const double slope = sigma(params, x0);
    const Index pre_end = restart.value_or(nodes);
    for (Index i = 0; i < pre_end; ++i) x[i] = x0 + slope * (B[i] - B[0]);
    start = pre_end;
    if (restart) shift = B[*restart];
  } else {
    shift = B[0];
  }
  for (Index i = start; i < nodes; ++i) x[i] = inverse(B[i] - shift);
  x[0] = x0;

  SolutionPath sol{SamplePath(B.grid, std::move(x), label), method, std::nullopt, restart, params, x0};
  if (method == SolveMethod::mollified) sol.n = params.index();
  return sol;
}

}  // namespace

std::optional<Index> first_zero_index(const SamplePath& B, const SkewParams& params, double x0) {
  if (x0 == 0.0) throw DomainError("first_zero_index: x0 = 0 has no pre-phase");
  const double slope = sigma(params, x0);
  for (Index i = 1; i < B.size(); ++i) {
    const double x = x0 + slope * (B[i] - B[0]);
    if (x0 > 0.0 ? x <= 0.0 : x >= 0.0) return i;
  }
  return std::nullopt;
}

SolutionPath solve_exact(const SkewParams& params, double x0, const SamplePath& B) {
  const SkewParams base0 = params.with_base(0.0);
  return solve_with(
      base0, x0, B, [&](double y) { return lambda_exact_inv(base0, y + lambda_exact(base0, 0.0)); },
      SolveMethod::exact_transform, PathLabel::exact_solution);
}

SolutionPath solve_mollified(const SkewParams& params, double x0, const SamplePath& B) {
  const SkewParams base0 = params.with_base(0.0);
  (void)base0.index();  // throws without n
  const double zn = lambda_n(base0, 0.0);
  return solve_with(
      base0, x0, B, [&](double y) { return lambda_n_inv(base0, y + zn); }, SolveMethod::mollified,
      PathLabel::mollified_solution);
}

double transform_identity_residual(const SolutionPath& sol, const SamplePath& B) {
  if (!(sol.path.grid == B.grid)) throw DomainError("transform_identity_residual: grids differ");
  const SkewParams& p = sol.params;
  const Index nodes = B.size();
  const Index restart = sol.restart_index.value_or(sol.x0 == 0.0 ? 0 : nodes);
  double worst = 0.0;
  for (Index i = 0; i < nodes; ++i) {
    const bool post = i >= restart;
    const double start = post ? 0.0 : sol.x0;
    const double driver = post ? B[i] - B[restart] : B[i] - B[0];
    const double r = lambda_exact(p, sol.path[i]) - lambda_exact(p, start) - driver;
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

double sde_residual(const SolutionPath& sol, const SamplePath& B, Index t_idx) {
  if (!(sol.path.grid == B.grid)) throw DomainError("sde_residual: grids differ");
  if (t_idx < 0 || t_idx >= B.size()) throw DomainError("sde_residual: node index out of range");
  const Vector& x = sol.path.values;
  double sum = 0.0;
  for (Index i = 0; i < t_idx; ++i) sum += sigma(sol.params, x[i]) * (B[i + 1] - B[i]);
  return std::abs(x[t_idx] - sol.x0 - sum);
}

ConvergenceReport convergence_study(const SkewParams& params, double x0, const SamplePath& B,
                                    std::span<const int> n_list) {
  if (n_list.size() < 4) throw DomainError("convergence_study needs at least 4 values of n");
  for (std::size_t k = 1; k < n_list.size(); ++k) {
    if (n_list[k] <= n_list[k - 1]) throw DomainError("convergence_study: n_list must be strictly increasing");
  }
  const SolutionPath exact = solve_exact(params, x0, B);
  ConvergenceReport report;
  std::vector<double> log_n, log_err;
  for (int n : n_list) {
    const SolutionPath moll = solve_mollified(params.with_n(n), x0, B);
    const double err = (moll.path.values - exact.path.values).cwiseAbs().maxCoeff();
    report.entries.push_back({n, err});
    report.constant = std::max(report.constant, n * err);
    if (err > 0.0) {
      log_n.push_back(std::log(static_cast<double>(n)));
      log_err.push_back(std::log(err));
    }
  }
  if (log_n.size() >= 2) report.slope = least_squares_fit(log_n, log_err).slope;
  return report;
}

}  // namespace skewfbm

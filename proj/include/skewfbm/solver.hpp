#pragma once

#include "skewfbm/skew_transform.hpp"
#include "skewfbm/types.hpp"

#include <optional>
#include <span>
#include <vector>

namespace skewfbm {

enum class SolveMethod { exact_transform, mollified };

/// Solution of x_t = x0 + int_0^t sigma(x_s) dB_s on the driver's grid.
struct SolutionPath {
  SamplePath path;
  SolveMethod method;
  std::optional<int> n;                // mollification index for SolveMethod::mollified
  std::optional<Index> restart_index;  // first node at or past the pre-phase zero crossing
  SkewParams params;
  double x0;
};

/// First node i where the pre-phase x0 + sigma(x0) B_{t_i} reaches or crosses 0.
std::optional<Index> first_zero_index(const SamplePath& B, const SkewParams& params, double x0);

/// Pre-phase x0 + sigma(x0) B until the restart node i*, then Lambda^{-1}(B - B_{t_i*}).
/// The transform base point is taken as a = 0 regardless of params.base().
SolutionPath solve_exact(const SkewParams& params, double x0, const SamplePath& B);

/// Same restart structure with Lambda_n^{-1}(B - B_{t_i*} + z_n); needs params.n().
SolutionPath solve_mollified(const SkewParams& params, double x0, const SamplePath& B);

/// Max over nodes of |Lambda(x_t) - Lambda(x_0) - B_t|, with the driver shifted by B_{t_i*}
/// and x_0 replaced by 0 after the restart node.
double transform_identity_residual(const SolutionPath& sol, const SamplePath& B);

/// |x_t - x0 - sum_{i < t_idx} sigma(x_{t_i}) (B_{t_{i+1}} - B_{t_i})|.
double sde_residual(const SolutionPath& sol, const SamplePath& B, Index t_idx);

struct ConvergenceEntry {
  int n;
  double sup_error;
};

struct ConvergenceReport {
  std::vector<ConvergenceEntry> entries;
  std::optional<double> slope;  // absent when every error is zero
  double constant = 0.0;        // max n * sup_error
};

ConvergenceReport convergence_study(const SkewParams& params, double x0, const SamplePath& B,
                                    std::span<const int> n_list);

}  // namespace skewfbm

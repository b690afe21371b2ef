#pragma once

#include "skewfbm/types.hpp"

#include <Eigen/Cholesky>

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace skewfbm {

/// R_H(t, s) = (t^{2H} + s^{2H} - |t - s|^{2H}) / 2.
double fbm_covariance(HurstParameter H, double t, double s);

/// Autocovariance of unit-step fractional Gaussian noise at integer lag k.
double fgn_autocovariance(HurstParameter H, Index k);

/// Unblocked Cholesky that reports the first pivot index whose Schur complement
/// is not positive, or -1. Used to name the failure after Eigen's LLT gives up.
Index first_nonpositive_pivot(const Matrix& cov);

enum class Generator { cholesky, circulant };

const char* to_string(Generator g);

/// Exact sampler through the Cholesky factor of [R_H(t_i, t_j)], i, j = 1..N.
/// The factor is computed once per (H, grid); sample() is then O(N^2).
class CholeskyFbm {
 public:
  CholeskyFbm(HurstParameter H, const TimeGrid& grid);

  SamplePath sample(std::uint64_t seed) const;
  /// Only B_T for a given seed; identical to sample(seed).values[N].
  double terminal_value(std::uint64_t seed) const;

  const Matrix& factor() const { return factor_; }

 private:
  HurstParameter hurst_;
  TimeGrid grid_;
  Matrix factor_;
};

/// Circulant-embedding (Davies-Harte) sampler of fractional Gaussian noise,
/// cumulatively summed into fBm. O(N log N) per path.
class CirculantFbm {
 public:
  CirculantFbm(HurstParameter H, const TimeGrid& grid);

  SamplePath sample(std::uint64_t seed) const;

  /// Eigenvalues of the 2N circulant embedding, after clamping round-off negatives.
  const Vector& eigenvalues() const { return eigenvalues_; }

 private:
  HurstParameter hurst_;
  TimeGrid grid_;
  Vector eigenvalues_;
  Vector amplitude_;  // sqrt(lambda_k / M)
};

SamplePath generate_cholesky(HurstParameter H, const TimeGrid& grid, std::uint64_t seed);
SamplePath generate_circulant(HurstParameter H, const TimeGrid& grid, std::uint64_t seed);
SamplePath generate(Generator method, HurstParameter H, const TimeGrid& grid, std::uint64_t seed);

/// Grid restriction of the gamma-Hoelder norm on [t_a, t_b]:
/// sup |f| + max_{s<t} |f(t) - f(s)| / (t - s)^gamma. A lower bound of the continuum norm.
double holder_norm(const SamplePath& path, double gamma, Index a_idx, Index b_idx);
double holder_seminorm(const SamplePath& path, double gamma, Index a_idx, Index b_idx);

struct MeanEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Sample mean and standard error of B_{t_i} B_{t_j} across paths.
MeanEstimate empirical_covariance(std::span<const SamplePath> paths, Index i, Index j);

}  // namespace skewfbm

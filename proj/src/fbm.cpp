#include "skewfbm/fbm.hpp"

#include "skewfbm/rng.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>

namespace skewfbm {

double fbm_covariance(HurstParameter H, double t, double s) {
  if (t < 0.0 || s < 0.0) throw DomainError("fbm_covariance: times must be nonnegative");
  const double two_h = 2.0 * H.value();
  return 0.5 * (std::pow(t, two_h) + std::pow(s, two_h) - std::pow(std::abs(t - s), two_h));
}

double fgn_autocovariance(HurstParameter H, Index k) {
  const double two_h = 2.0 * H.value();
  const double kk = static_cast<double>(std::abs(k));
  return 0.5 * (std::pow(kk + 1.0, two_h) - 2.0 * std::pow(kk, two_h) + std::pow(std::abs(kk - 1.0), two_h));
}

const char* to_string(Generator g) {
  return g == Generator::cholesky ? "cholesky" : "circulant";
}

Index first_nonpositive_pivot(const Matrix& cov) {
  const Index n = cov.rows();
  Matrix L = Matrix::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    const double d = cov(j, j) - L.row(j).head(j).squaredNorm();
    if (!(d > 0.0)) return j;
    L(j, j) = std::sqrt(d);
    if (j + 1 < n) {
      L.col(j).tail(n - j - 1) =
          (cov.col(j).tail(n - j - 1) - L.bottomLeftCorner(n - j - 1, j) * L.row(j).head(j).transpose()) /
          L(j, j);
    }
  }
  return -1;
}

CholeskyFbm::CholeskyFbm(HurstParameter H, const TimeGrid& grid) : hurst_(H), grid_(grid) {
  const Index n = grid.steps();
  Matrix cov(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j <= i; ++j) {
      cov(i, j) = cov(j, i) = fbm_covariance(H, grid.time(i + 1), grid.time(j + 1));
    }
  }
  Eigen::LLT<Matrix> llt(cov);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("Cholesky factorization of the fBm covariance failed at pivot index " +
                         std::to_string(first_nonpositive_pivot(cov)) +
                         " (matrix not numerically positive definite)");
  }
  factor_ = llt.matrixL();
}

SamplePath CholeskyFbm::sample(std::uint64_t seed) const {
  const Index n = grid_.steps();
  NormalStream rng(seed);
  Vector z(n);
  for (Index i = 0; i < n; ++i) z[i] = rng.normal();
  Vector values(n + 1);
  values[0] = 0.0;
  values.tail(n).noalias() = factor_.triangularView<Eigen::Lower>() * z;
  return SamplePath(grid_, std::move(values), PathLabel::fbm);
}

double CholeskyFbm::terminal_value(std::uint64_t seed) const {
  const Index n = grid_.steps();
  NormalStream rng(seed);
  double acc = 0.0;
  for (Index i = 0; i < n; ++i) acc += factor_(n - 1, i) * rng.normal();
  return acc;
}

CirculantFbm::CirculantFbm(HurstParameter H, const TimeGrid& grid) : hurst_(H), grid_(grid) {
  const Index n = grid.steps();
  const Index m = 2 * n;
  const double scale = std::pow(grid.dt(), 2.0 * H.value());
  std::vector<std::complex<double>> row(static_cast<std::size_t>(m)), spectrum;
  for (Index k = 0; k <= n; ++k) row[k] = scale * fgn_autocovariance(H, k);
  for (Index k = 1; k < n; ++k) row[m - k] = row[k];

  Eigen::FFT<double> fft;
  fft.fwd(spectrum, row);

  eigenvalues_.resize(m);
  double largest = 0.0;
  for (Index k = 0; k < m; ++k) {
    eigenvalues_[k] = spectrum[k].real();
    largest = std::max(largest, std::abs(eigenvalues_[k]));
  }
  const double tolerance = 1e-10 * largest;
  for (Index k = 0; k < m; ++k) {
    if (eigenvalues_[k] < -tolerance) {
      throw NumericalError("circulant embedding has negative eigenvalue " + std::to_string(eigenvalues_[k]) +
                           " at index " + std::to_string(k) + "; use generate_cholesky for this configuration");
    }
    eigenvalues_[k] = std::max(eigenvalues_[k], 0.0);
  }
  amplitude_ = (eigenvalues_ / static_cast<double>(m)).cwiseSqrt();
}

SamplePath CirculantFbm::sample(std::uint64_t seed) const {
  const Index n = grid_.steps();
  const Index m = 2 * n;
  NormalStream rng(seed);
  std::vector<std::complex<double>> weighted(static_cast<std::size_t>(m)), out;
  for (Index k = 0; k < m; ++k) {
    const double re = rng.normal();
    const double im = rng.normal();
    weighted[k] = amplitude_[k] * std::complex<double>(re, im);
  }
  Eigen::FFT<double> fft;
  fft.fwd(out, weighted);

  Vector values(n + 1);
  values[0] = 0.0;
  double acc = 0.0;
  for (Index i = 0; i < n; ++i) {
    acc += out[i].real();
    values[i + 1] = acc;
  }
  return SamplePath(grid_, std::move(values), PathLabel::fbm);
}

SamplePath generate_cholesky(HurstParameter H, const TimeGrid& grid, std::uint64_t seed) {
  return CholeskyFbm(H, grid).sample(seed);
}

SamplePath generate_circulant(HurstParameter H, const TimeGrid& grid, std::uint64_t seed) {
  return CirculantFbm(H, grid).sample(seed);
}

SamplePath generate(Generator method, HurstParameter H, const TimeGrid& grid, std::uint64_t seed) {
  return method == Generator::cholesky ? generate_cholesky(H, grid, seed) : generate_circulant(H, grid, seed);
}

double holder_seminorm(const SamplePath& path, double gamma, Index a_idx, Index b_idx) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw DomainError("Hoelder exponent must lie in (0, 1)");
  if (a_idx < 0 || b_idx > path.grid.steps() || a_idx >= b_idx) {
    throw DomainError("holder_norm: empty or out-of-range sub-interval");
  }
  const Index span = b_idx - a_idx;
  Vector inv_lag(span + 1);
  inv_lag[0] = 0.0;
  for (Index k = 1; k <= span; ++k) inv_lag[k] = std::pow(static_cast<double>(k) * path.grid.dt(), -gamma);

  const auto& v = path.values;
  double best = 0.0;
  for (Index i = a_idx; i < b_idx; ++i) {
    for (Index j = i + 1; j <= b_idx; ++j) {
      best = std::max(best, std::abs(v[j] - v[i]) * inv_lag[j - i]);
    }
  }
  return best;
}

double holder_norm(const SamplePath& path, double gamma, Index a_idx, Index b_idx) {
  const double semi = holder_seminorm(path, gamma, a_idx, b_idx);
  return path.values.segment(a_idx, b_idx - a_idx + 1).cwiseAbs().maxCoeff() + semi;
}

MeanEstimate empirical_covariance(std::span<const SamplePath> paths, Index i, Index j) {
  if (paths.size() < 2) throw DomainError("empirical_covariance needs at least two paths");
  const TimeGrid& grid = paths.front().grid;
  if (i < 0 || j < 0 || i > grid.steps() || j > grid.steps()) {
    throw DomainError("empirical_covariance: node index out of range");
  }
  const double count = static_cast<double>(paths.size());
  double sum = 0.0;
  for (const auto& p : paths) {
    if (!(p.grid == grid)) throw DomainError("empirical_covariance: paths live on different grids");
    sum += p[i] * p[j];
  }
  const double mean = sum / count;
  double ss = 0.0;
  for (const auto& p : paths) {
    const double d = p[i] * p[j] - mean;
    ss += d * d;
  }
  return {mean, std::sqrt(ss / (count - 1.0) / count)};
}

}  // namespace skewfbm

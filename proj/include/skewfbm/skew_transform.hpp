#pragma once

#include "skewfbm/types.hpp"

#include <cmath>
#include <optional>

namespace skewfbm {

/// Skew weight alpha in (0,1), transform base point a >= 0, optional mollification index n >= 1.
///
/// sigma(x) = 1/alpha on [0, inf) and 1/(1 - alpha) on (-inf, 0). The closed
/// forms below assume a >= 0; negative base points are rejected.
class SkewParams {
 public:
  explicit SkewParams(double alpha, double base = 0.0, std::optional<int> n = std::nullopt)
      : alpha_(alpha), base_(base), n_(n) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("skew weight alpha must lie in (0, 1)");
    if (!(base >= 0.0)) throw DomainError("transform base point a < 0 is not supported by the closed forms");
    if (n && *n < 1) throw DomainError("mollification index n must be >= 1");
  }

  double alpha() const { return alpha_; }
  double base() const { return base_; }
  const std::optional<int>& n() const { return n_; }
  bool degenerate() const { return alpha_ == 0.5; }

  int index() const {
    if (!n_) throw DomainError("operation needs a mollification index n");
    return *n_;
  }

  SkewParams with_n(int n) const { return SkewParams(alpha_, base_, n); }
  SkewParams with_base(double a) const { return SkewParams(alpha_, a, n_); }

 private:
  double alpha_;
  double base_;
  std::optional<int> n_;
};

/// Slope n (1 - 2 alpha) / (alpha (1 - alpha)) of sigma_n on (-1/n, 0). Zero when alpha = 1/2.
inline double interior_slope(const SkewParams& p) {
  const double a = p.alpha();
  return p.index() * (1.0 - 2.0 * a) / (a * (1.0 - a));
}

template <typename Scalar>
Scalar sigma(const SkewParams& p, Scalar x) {
  const Scalar a = p.alpha();
  return x >= Scalar(0) ? Scalar(1) / a : Scalar(1) / (Scalar(1) - a);
}

/// Continuous piecewise-linear mollification; differs from sigma only on (-1/n, 0).
template <typename Scalar>
Scalar sigma_n(const SkewParams& p, Scalar x) {
  const Scalar width = Scalar(1) / Scalar(p.index());
  if (x >= Scalar(0) || x <= -width) return sigma(p, x);
  const Scalar a = p.alpha();
  return Scalar(1) / a + Scalar(p.index()) * (Scalar(1) - Scalar(2) * a) / (a * (Scalar(1) - a)) * x;
}

/// Lambda(x) = int_a^x ds / sigma(s).
template <typename Scalar>
Scalar lambda_exact(const SkewParams& p, Scalar x) {
  const Scalar a = p.alpha();
  const Scalar base = p.base();
  return x >= Scalar(0) ? a * (x - base) : (Scalar(1) - a) * x - base * a;
}

template <typename Scalar>
Scalar lambda_exact_inv(const SkewParams& p, Scalar y) {
  const Scalar a = p.alpha();
  const Scalar base = p.base();
  return y >= -base * a ? y / a + base : (y + base * a) / (Scalar(1) - a);
}

/// alpha_n = Lambda_n(-1/n), the lower knee of Lambda_n^{-1}.
/// For alpha = 1/2 this is the continuous limit -a/2 - 1/(2n).
template <typename Scalar = double>
Scalar alpha_n_threshold(const SkewParams& p) {
  const Scalar a = p.alpha();
  const Scalar base = p.base();
  const Scalar width = Scalar(1) / Scalar(p.index());
  if (p.degenerate()) return -base * a - a * width;
  const Scalar c = Scalar(p.index()) * (Scalar(1) - Scalar(2) * a) / (a * (Scalar(1) - a));
  using std::log1p;
  // log(alpha / (1 - alpha)) written so that it stays accurate near alpha = 1/2
  return -base * a + log1p((Scalar(2) * a - Scalar(1)) / (Scalar(1) - a)) / c;
}

/// Lambda_n(x) = int_a^x ds / sigma_n(s), closed form.
template <typename Scalar>
Scalar lambda_n(const SkewParams& p, Scalar x) {
  if (p.degenerate()) return lambda_exact(p, x);
  const Scalar a = p.alpha();
  const Scalar base = p.base();
  const Scalar width = Scalar(1) / Scalar(p.index());
  if (x >= Scalar(0)) return a * (x - base);
  if (x > -width) {
    const Scalar c = Scalar(p.index()) * (Scalar(1) - Scalar(2) * a) / (a * (Scalar(1) - a));
    using std::log1p;
    return -base * a + log1p(a * c * x) / c;
  }
  return alpha_n_threshold<Scalar>(p) + (Scalar(1) - a) * (x + width);
}

/// Exact inverse of lambda_n: three pieces split at y = -a alpha and y = alpha_n.
template <typename Scalar>
Scalar lambda_n_inv(const SkewParams& p, Scalar y) {
  if (p.degenerate()) return lambda_exact_inv(p, y);
  const Scalar a = p.alpha();
  const Scalar base = p.base();
  const Scalar knee = -base * a;
  if (y >= knee) return y / a + base;
  const Scalar lower = alpha_n_threshold<Scalar>(p);
  if (y > lower) {
    const Scalar c = Scalar(p.index()) * (Scalar(1) - Scalar(2) * a) / (a * (Scalar(1) - a));
    using std::expm1;
    return expm1(c * (y - knee)) / (a * c);
  }
  return (y - lower) / (Scalar(1) - a) - Scalar(1) / Scalar(p.index());
}

/// K(alpha) = alpha (1 - alpha) / (1 - 2 alpha) log((1 - alpha) / alpha), with K(1/2) = 1/2.
/// For x <= -1/n: Lambda_n - Lambda = (1 - alpha - K) / n, and
/// Lambda_n^{-1} - Lambda^{-1} = (K / (1 - alpha) - 1) / n on y <= alpha_n.
double gap_coefficient(double alpha);

/// C(alpha) = max(1, |K(alpha) / (1 - alpha) - 1|). Both transform gaps are at most C(alpha) / n.
double gap_constant(double alpha);

struct SupGap {
  double gap_lambda = 0.0;   // max |Lambda_n - Lambda| on [-2/n, 1]
  double gap_inverse = 0.0;  // max |Lambda_n^{-1} - Lambda^{-1}| on [alpha_n - 1/n, 1]
};

/// Brute-force maxima over probe_count equispaced points (endpoints included).
SupGap sup_gap(const SkewParams& p, Index probe_count);

/// Immutable bundle of a SkewParams with its derived constants.
class TransformFamily {
 public:
  explicit TransformFamily(SkewParams p);

  const SkewParams& params() const { return params_; }
  double alpha_n() const { return alpha_n_; }
  double slope() const { return slope_; }
  double zbar() const { return zbar_; }
  double zn() const { return zn_; }

  double sigma(double x) const { return skewfbm::sigma(params_, x); }
  double sigma_n(double x) const { return skewfbm::sigma_n(params_, x); }
  double lambda(double x) const { return lambda_exact(params_, x); }
  double lambda_inv(double y) const { return lambda_exact_inv(params_, y); }
  double lambda_n(double x) const { return skewfbm::lambda_n(params_, x); }
  double lambda_n_inv(double y) const { return skewfbm::lambda_n_inv(params_, y); }

 private:
  SkewParams params_;
  double alpha_n_;
  double slope_;
  double zbar_;
  double zn_;
};

}  // namespace skewfbm

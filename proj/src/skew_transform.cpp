#include "skewfbm/skew_transform.hpp"

#include <algorithm>
#include <cmath>

namespace skewfbm {

double gap_coefficient(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("skew weight alpha must lie in (0, 1)");
  if (alpha == 0.5) return 0.5;
  const double d = 1.0 - 2.0 * alpha;
  return alpha * (1.0 - alpha) * std::log1p(d / alpha) / d;
}

double gap_constant(double alpha) {
  return std::max(1.0, std::abs(gap_coefficient(alpha) / (1.0 - alpha) - 1.0));
}

SupGap sup_gap(const SkewParams& p, Index probe_count) {
  if (probe_count < 1000) throw DomainError("sup_gap needs at least 1000 probe points");
  const double width = 1.0 / p.index();
  SupGap out;

  const double x_lo = -2.0 * width, x_hi = 1.0;
  for (Index i = 0; i < probe_count; ++i) {
    const double x = x_lo + (x_hi - x_lo) * static_cast<double>(i) / static_cast<double>(probe_count - 1);
    out.gap_lambda = std::max(out.gap_lambda, std::abs(lambda_n(p, x) - lambda_exact(p, x)));
  }

  const double y_lo = alpha_n_threshold(p) - width, y_hi = 1.0;
  for (Index i = 0; i < probe_count; ++i) {
    const double y = y_lo + (y_hi - y_lo) * static_cast<double>(i) / static_cast<double>(probe_count - 1);
    out.gap_inverse = std::max(out.gap_inverse, std::abs(lambda_n_inv(p, y) - lambda_exact_inv(p, y)));
  }
  return out;
}

TransformFamily::TransformFamily(SkewParams p)
    : params_(p),
      alpha_n_(alpha_n_threshold(p)),
      slope_(interior_slope(p)),
      zbar_(lambda_exact(p, 0.0)),
      zn_(skewfbm::lambda_n(p, 0.0)) {}

}  // namespace skewfbm

#pragma once

#include <span>

namespace skewfbm {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Ordinary least squares y ~ intercept + slope x. Needs >= 2 distinct x.
LinearFit least_squares_fit(std::span<const double> x, std::span<const double> y);

/// Slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Two-sample Kolmogorov-Smirnov test with the asymptotic Kolmogorov p-value
/// (Stephens' small-sample correction on the effective size).
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Kolmogorov survival function Q(lambda) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2).
double kolmogorov_survival(double lambda);

}  // namespace skewfbm

#include "skewfbm/stats.hpp"
#include "skewfbm/types.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

using namespace skewfbm;

namespace {

// Brute-force sup |F_a - F_b| over all sample points.
double ks_statistic_oracle(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  auto ecdf = [](const std::vector<double>& s, double x) {
    return static_cast<double>(std::count_if(s.begin(), s.end(), [x](double v) { return v <= x; })) / s.size();
  };
  for (const auto* s : {&a, &b}) {
    for (double x : *s) worst = std::max(worst, std::abs(ecdf(a, x) - ecdf(b, x)));
  }
  return worst;
}

}  // namespace

TEST_CASE("least squares fit") {
  const std::vector<double> x{0.0, 1.0, 2.0, 3.0};
  const std::vector<double> y{1.0, 3.0, 5.0, 7.0};
  const LinearFit fit = least_squares_fit(x, y);
  CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(fit.intercept == doctest::Approx(1.0).epsilon(1e-14));

  // residual-orthogonal noise leaves the slope untouched
  const std::vector<double> noisy{1.1, 2.9, 4.9, 7.1};
  CHECK(least_squares_fit(x, noisy).slope == doctest::Approx(2.0).epsilon(1e-14));

  const std::vector<double> n{2, 4, 8, 16, 32};
  std::vector<double> err;
  for (double v : n) err.push_back(0.3 / v);
  CHECK(loglog_slope(n, err) == doctest::Approx(-1.0).epsilon(1e-12));

  CHECK_THROWS_AS(least_squares_fit(std::vector<double>{1.0, 1.0}, std::vector<double>{0.0, 1.0}), DomainError);
  CHECK_THROWS_AS(least_squares_fit(std::vector<double>{1.0, 2.0}, std::vector<double>{0.0}), DomainError);
  CHECK_THROWS_AS(loglog_slope(std::vector<double>{1.0, 2.0}, std::vector<double>{0.0, 1.0}), DomainError);
}

TEST_CASE("Kolmogorov survival function") {
  CHECK(kolmogorov_survival(0.0) == 1.0);
  // standard critical values of the Kolmogorov distribution
  CHECK(kolmogorov_survival(1.2238) == doctest::Approx(0.10).epsilon(1e-3));
  CHECK(kolmogorov_survival(1.3581) == doctest::Approx(0.05).epsilon(1e-3));
  CHECK(kolmogorov_survival(1.6276) == doctest::Approx(0.01).epsilon(1e-3));
  double previous = 1.0;
  for (double lambda = 0.05; lambda < 3.0; lambda += 0.05) {
    const double q = kolmogorov_survival(lambda);
    CHECK(q <= previous);
    CHECK(q >= 0.0);
    previous = q;
  }
}

TEST_CASE("two-sample KS test") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> normal;
  std::vector<double> a(300), b(211);
  for (double& v : a) v = normal(rng);
  for (double& v : b) v = normal(rng);
  CHECK(ks_two_sample(a, b).statistic == doctest::Approx(ks_statistic_oracle(a, b)).epsilon(1e-14));

  const KsResult same = ks_two_sample(a, a);
  CHECK(same.statistic == 0.0);
  CHECK(same.p_value == 1.0);

  std::vector<double> shifted(b);
  for (double& v : shifted) v += 10.0;
  const KsResult apart = ks_two_sample(a, shifted);
  CHECK(apart.statistic == 1.0);
  CHECK(apart.p_value < 1e-10);

  int rejections = 0;
  for (int trial = 0; trial < 200; ++trial) {
    for (double& v : a) v = normal(rng);
    for (double& v : b) v = normal(rng);
    if (ks_two_sample(a, b).p_value < 0.05) ++rejections;
  }
  CHECK(rejections <= 20);
  CHECK_THROWS_AS(ks_two_sample(std::vector<double>{}, b), DomainError);
}

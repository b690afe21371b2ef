#pragma once

#include "skewfbm/types.hpp"

#include <cstdint>

namespace skewfbm {

enum class Side { left_from_a, right_from_b };

/// Order and side of a fractional derivative on [a, b]. The anchoring end
/// (a for left, b for right) must be a node of the path's grid.
struct FracDerivSpec {
  FracDerivSpec(double order_, Side side_, double a_, double b_) : order(order_), side(side_), a(a_), b(b_) {
    if (!(order > 0.0 && order < 1.0)) throw DomainError("fractional order must lie in (0, 1)");
    if (!(a < b)) throw DomainError("fractional derivative interval needs a < b");
  }
  double order;
  Side side;
  double a;
  double b;
};

/// D_{a+}^order f(t) for the piecewise-linear interpolant of f, t in (a, b].
///
/// Each grid cell contributes the closed-form kernel moment of its linear
/// segment, so the only error is the interpolation of f itself.
double left_frac_deriv(const SamplePath& f, const FracDerivSpec& spec, double t);

/// D_{b-}^order of g^{b-} = g - g(b) at t in [a, b), same scheme mirrored.
double right_frac_deriv_adjusted(const SamplePath& g, const FracDerivSpec& spec, double t);

/// Integrand, integrator and the splitting order used by the fractional form.
/// holder_f / holder_g are the caller-asserted Hoelder exponents (mu, beta);
/// the fractional form needs mu + beta > 1 and 1 - beta < order < mu.
struct YoungPair {
  SamplePath f;
  SamplePath g;
  double order;
  double holder_f = 1.0;
  double holder_g = 1.0;
};

/// int_a^b (D_{a+}^order f)(r) (D_{b-}^{1-order} g^{b-})(r) dr by composite
/// Gauss-Legendre quadrature over grid cells. Cells are mapped through a
/// quintic smoothstep so the cusps of both derivatives at nodes are flattened;
/// the first cell uses an extra u -> u^{1/(1-order)} map that absorbs the
/// (r - a)^{-order} singularity.
double young_integral_fractional(const YoungPair& pair, Index a_idx, Index b_idx);

/// Left-endpoint Riemann-Stieltjes sum over the shared grid.
double young_integral_riemann(const YoungPair& pair, Index a_idx, Index b_idx);

/// Midpoint (2 - gamma) / 2 of the window (1 - gamma, 1) for the order used against a gamma-Hoelder driver.
double default_order_tilde(double gamma);

struct FracBoundReport {
  Index pairs = 0;
  double max_ratio = 0.0;
  Index worst_s = 0;
  Index worst_t = 0;
  double holder_norm = 0.0;
  double constant = 0.0;
  bool passed = false;
};

/// Checks |D_{t-}^{1-order_tilde} (B)^{t-}(s)| <= C ||B||_{gamma,[0,T]} (t - s)^{order_tilde + gamma - 1}
/// on random node pairs s < t, with C = (1 + (1 - order_tilde) / (order_tilde + gamma - 1)) / Gamma(order_tilde).
FracBoundReport verify_frac_bound(const SamplePath& path, HurstParameter H, double order_tilde, double gamma,
                                  Index sample_pairs, std::uint64_t seed = 1, double tolerance = 1e-2);

}  // namespace skewfbm

#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace skewfbm {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Precondition or parameter-range violation.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A numerical procedure broke down (non-PD covariance, negative embedding eigenvalue).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Hurst index restricted to [1/2, 1).
class HurstParameter {
 public:
  explicit HurstParameter(double H) : value_(H) {
    if (!(H >= 0.5 && H < 1.0)) {
      throw DomainError("Hurst parameter must lie in [0.5, 1), got " + std::to_string(H));
    }
  }
  double value() const { return value_; }
  bool is_brownian() const { return value_ == 0.5; }

 private:
  double value_;
};

/// Uniform endpoint-inclusive grid t_i = i T / N, i = 0..N.
class TimeGrid {
 public:
  TimeGrid(double horizon, Index steps) : horizon_(horizon), steps_(steps) {
    if (!(horizon > 0.0)) throw DomainError("time horizon must be positive");
    if (steps < 1) throw DomainError("grid needs at least one step");
  }

  double horizon() const { return horizon_; }
  Index steps() const { return steps_; }
  Index nodes() const { return steps_ + 1; }
  double dt() const { return horizon_ / static_cast<double>(steps_); }
  double time(Index i) const { return horizon_ * static_cast<double>(i) / static_cast<double>(steps_); }

  bool operator==(const TimeGrid& other) const {
    return horizon_ == other.horizon_ && steps_ == other.steps_;
  }

 private:
  double horizon_;
  Index steps_;
};

enum class PathLabel { fbm, exact_solution, mollified_solution, generic };

/// Values of a real path at the nodes of a TimeGrid.
struct SamplePath {
  SamplePath(TimeGrid g, Vector v, PathLabel l = PathLabel::generic)
      : grid(g), values(std::move(v)), label(l) {
    if (values.size() != grid.nodes()) {
      throw DomainError("path has " + std::to_string(values.size()) + " values for a grid of " +
                        std::to_string(grid.nodes()) + " nodes");
    }
    if (label == PathLabel::fbm && values[0] != 0.0) {
      throw DomainError("fBm path must start at 0");
    }
  }

  Index size() const { return values.size(); }
  double operator[](Index i) const { return values[i]; }

  TimeGrid grid;
  Vector values;
  PathLabel label;
};

/// Path with values f(t_i) for a callable f.
template <typename F>
SamplePath sample_function(const TimeGrid& grid, F&& f, PathLabel label = PathLabel::generic) {
  Vector v(grid.nodes());
  for (Index i = 0; i < grid.nodes(); ++i) v[i] = f(grid.time(i));
  return SamplePath(grid, std::move(v), label);
}

}  // namespace skewfbm

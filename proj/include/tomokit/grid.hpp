#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace tomo {

/// Uniform sampling of [-L, L] with N points, x_k = -L + k * 2L/(N-1).
class Grid1D {
public:
  static constexpr std::size_t kMinPoints = 16;

  Grid1D(double half_width, std::size_t n_points);

  double half_width() const { return half_width_; }
  std::size_t size() const { return n_; }
  double step() const { return step_; }
  double front() const { return -half_width_; }
  double at(std::size_t k) const { return -half_width_ + static_cast<double>(k) * step_; }
  std::vector<double> points() const;

  bool operator==(const Grid1D& other) const {
    return n_ == other.n_ && half_width_ == other.half_width_;
  }

private:
  double half_width_;
  std::size_t n_;
  double step_;
};

/// Full-circle angle grid theta_k = (k + phase) * 2pi / n. The default
/// half-step phase keeps every node off the axes {0, pi/2, pi, 3pi/2}.
class AngleGrid {
public:
  explicit AngleGrid(std::size_t n_angles, double phase = 0.5);

  std::size_t size() const { return n_; }
  double phase() const { return phase_; }
  double step() const { return 2.0 * std::numbers::pi / static_cast<double>(n_); }
  double at(std::size_t k) const { return (static_cast<double>(k) + phase_) * step(); }
  std::vector<double> points() const;

  /// Index of the node closest to theta (periodic).
  std::size_t nearest(double theta) const;

  bool operator==(const AngleGrid& other) const {
    return n_ == other.n_ && phase_ == other.phase_;
  }

private:
  std::size_t n_;
  double phase_;
};

/// Trapezoidal rule on uniformly spaced samples.
double trapezoid(std::span<const double> values, double step);

/// Reduce an angle into [0, 2pi).
double wrap_angle(double theta);

} // namespace tomo

#include "tomokit/grid.hpp"

#include <string>

#include "tomokit/error.hpp"

namespace tomo {

Grid1D::Grid1D(double half_width, std::size_t n_points)
    : half_width_(half_width), n_(n_points) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw InvalidInput("Grid1D: half width must be positive and finite");
  }
  if (n_points < kMinPoints) {
    throw InvalidInput("Grid1D: need at least " + std::to_string(kMinPoints) + " points, got " +
                       std::to_string(n_points));
  }
  step_ = 2.0 * half_width / static_cast<double>(n_points - 1);
}

std::vector<double> Grid1D::points() const {
  std::vector<double> xs(n_);
  for (std::size_t k = 0; k < n_; ++k) xs[k] = at(k);
  return xs;
}

AngleGrid::AngleGrid(std::size_t n_angles, double phase) : n_(n_angles), phase_(phase) {
  if (n_angles < 1) throw InvalidInput("AngleGrid: need at least one angle");
  if (!(phase >= 0.0 && phase < 1.0)) throw InvalidInput("AngleGrid: phase must lie in [0, 1)");
}

std::vector<double> AngleGrid::points() const {
  std::vector<double> ts(n_);
  for (std::size_t k = 0; k < n_; ++k) ts[k] = at(k);
  return ts;
}

std::size_t AngleGrid::nearest(double theta) const {
  const double u = wrap_angle(theta) / step() - phase_;
  auto k = static_cast<long long>(std::llround(u));
  const auto n = static_cast<long long>(n_);
  k %= n;
  if (k < 0) k += n;
  return static_cast<std::size_t>(k);
}

double trapezoid(std::span<const double> values, double step) {
  if (values.empty()) return 0.0;
  double sum = 0.0;
  for (double v : values) sum += v;
  sum -= 0.5 * (values.front() + values.back());
  return sum * step;
}

double wrap_angle(double theta) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double t = std::fmod(theta, two_pi);
  if (t < 0.0) t += two_pi;
  if (t >= two_pi) t -= two_pi;
  return t;
}

} // namespace tomo

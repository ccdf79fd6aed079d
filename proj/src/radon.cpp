#include "tomokit/radon.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tomokit/error.hpp"
#include "tomokit/parallel.hpp"
#include "tomokit/simd/kernels.hpp"

namespace tomo {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Linear interpolation of samples on g, zero outside [front, back].
double sample_linear(std::span<const double> values, const Grid1D& g, double x) {
  const double u = (x - g.front()) / g.step();
  if (u < 0.0 || u > static_cast<double>(g.size() - 1)) return 0.0;
  auto i = static_cast<std::size_t>(u);
  if (i >= g.size() - 1) i = g.size() - 2;
  const double t = u - static_cast<double>(i);
  return values[i] + t * (values[i + 1] - values[i]);
}

// int_a^b u cos(k u + c) du
double int_u_cos(double k, double c, double a, double b) {
  if (std::abs(k) < 1e-9) return std::cos(c) * 0.5 * (b * b - a * a);
  auto anti = [&](double u) {
    return u * std::sin(k * u + c) / k + std::cos(k * u + c) / (k * k);
  };
  return anti(b) - anti(a);
}

std::vector<double> resample(std::span<const double> values, const Grid1D& from, const Grid1D& to,
                             bool mirror) {
  std::vector<double> out(to.size());
  for (std::size_t i = 0; i < to.size(); ++i) {
    const double x = mirror ? -to.at(i) : to.at(i);
    out[i] = std::max(0.0, sample_linear(values, from, x));
  }
  return out;
}

} // namespace

// ---------------------------------------------------------------------------

OpticalTomogram::OpticalTomogram(Grid1D x, AngleGrid angles, std::vector<double> values,
                                 double max_deficit)
    : x_(x), angles_(angles), values_(std::move(values)) {
  if (values_.size() != x_.size() * angles_.size()) {
    throw InvalidInput("OpticalTomogram: sample count does not match the (X, theta) grids");
  }
  for (std::size_t n = 0; n < values_.size(); ++n) {
    if (!(values_[n] >= 0.0)) {
      std::ostringstream msg;
      msg << "OpticalTomogram: negative or NaN sample at X index " << n % x_.size()
          << ", angle index " << n / x_.size();
      throw InvalidInput(msg.str());
    }
  }
  for (std::size_t k = 0; k < angles_.size(); ++k) {
    std::span<double> s(values_.data() + k * x_.size(), x_.size());
    const double mass = trapezoid(s, x_.step());
    const double deficit = std::abs(1.0 - mass);
    max_input_deficit_ = std::max(max_input_deficit_, deficit);
    if (deficit > max_deficit) {
      std::ostringstream msg;
      msg << "OpticalTomogram: slice at theta = " << angles_.at(k) << " has mass " << mass
          << " (normalization deficit beyond " << max_deficit << ", grid does not cover the support)";
      throw NumericGuard(msg.str());
    }
    if (deficit > 1e-12) {
      for (double& v : s) v /= mass;
    }
  }
}

OpticalTomogram optical_tomogram_classical(const PhaseSpaceDensity& f, const Grid1D& x,
                                           const AngleGrid& angles) {
  const Grid1D& qg = f.q();
  const Grid1D& pg = f.p();
  const simd::BilinearGrid grid{f.field().values.data(), qg.size(),   pg.size(),       qg.front(),
                                pg.front(),              1.0 / qg.step(), 1.0 / pg.step()};
  const double h = 0.5 * std::min(qg.step(), pg.step());
  const double reach = std::hypot(qg.half_width(), pg.half_width());
  const auto half = static_cast<std::size_t>(std::ceil(reach / h));
  const std::size_t count = 2 * half + 1;
  const double t0 = -static_cast<double>(half) * h;
  const auto& kern = simd::active_kernels();

  std::vector<double> values(x.size() * angles.size());
  parallel_for(angles.size(), [&](std::size_t k) {
    const double c = std::cos(angles.at(k));
    const double s = std::sin(angles.at(k));
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double X = x.at(i);
      // (q, p) = X (c, s) + t (-s, c)
      const double q0 = X * c - t0 * s;
      const double p0 = X * s + t0 * c;
      values[k * x.size() + i] = h * kern.line_sum(grid, q0, p0, -h * s, h * c, count);
    }
  });
  return OpticalTomogram(x, angles, std::move(values));
}

// ---------------------------------------------------------------------------

SymplecticEvaluator::SymplecticEvaluator(OpticalTomogram w, std::vector<AxisSlice> axis_slices)
    : w_(std::move(w)), axis_(std::move(axis_slices)) {
  for (auto& a : axis_) {
    if (a.values.size() != w_.x().size()) {
      throw InvalidInput("SymplecticEvaluator: axis slice does not match the X grid");
    }
    a.theta = wrap_angle(a.theta);
  }
  for (std::size_t k = 0; k < w_.angles().size(); ++k) {
    nodes_.push_back({w_.angles().at(k), w_.slice(k).data()});
  }
  for (const auto& a : axis_) nodes_.push_back({a.theta, a.values.data()});
  std::sort(nodes_.begin(), nodes_.end(), [](const Node& l, const Node& r) { return l.theta < r.theta; });
  // Grid angles that coincide with an axis slice are shadowed by the exact slice.
  std::vector<Node> merged;
  for (const auto& n : nodes_) {
    if (!merged.empty() && std::abs(n.theta - merged.back().theta) < 1e-12) continue;
    merged.push_back(n);
  }
  nodes_ = std::move(merged);
}

double SymplecticEvaluator::slice_value(const double* values, double X) const {
  return sample_linear(std::span<const double>(values, w_.x().size()), w_.x(), X);
}

double SymplecticEvaluator::optical(double X, double theta) const {
  const double t = wrap_angle(theta);
  auto hi = std::upper_bound(nodes_.begin(), nodes_.end(), t,
                             [](double v, const Node& n) { return v < n.theta; });
  const Node& upper = hi == nodes_.end() ? nodes_.front() : *hi;
  const Node& lower = hi == nodes_.begin() ? nodes_.back() : *(hi - 1);
  double span = upper.theta - lower.theta;
  double off = t - lower.theta;
  if (span <= 0.0) span += kTwoPi;
  if (off < 0.0) off += kTwoPi;
  const double a = slice_value(lower.values, X);
  if (off < 1e-14) return a;
  const double b = slice_value(upper.values, X);
  return a + (off / span) * (b - a);
}

double SymplecticEvaluator::operator()(double X, double mu, double nu) const {
  const double r = std::hypot(mu, nu);
  if (r == 0.0) throw InvalidInput("symplectic tomogram: (mu, nu) = (0, 0) is singular");
  return optical(X / r, std::atan2(nu, mu)) / r;
}

SymplecticEvaluator classical_evaluator(const PhaseSpaceDensity& f, OpticalTomogram w) {
  const auto qm = f.q_marginal();
  const auto pm = f.p_marginal();
  const Grid1D& x = w.x();
  std::vector<AxisSlice> axis{
      {0.0, resample(qm, f.q(), x, false)},
      {0.5 * kPi, resample(pm, f.p(), x, false)},
      {kPi, resample(qm, f.q(), x, true)},
      {1.5 * kPi, resample(pm, f.p(), x, true)},
  };
  for (auto& a : axis) {
    const double mass = trapezoid(a.values, x.step());
    for (double& v : a.values) v /= mass;
  }
  return SymplecticEvaluator(std::move(w), std::move(axis));
}

double symplectic_from_optical(const SymplecticEvaluator& m, double X, double mu, double nu) {
  return m(X, mu, nu);
}

Moments tomogram_moments(const SymplecticEvaluator& m, int n) {
  if (n < 0) throw InvalidInput("tomogram_moments: order must be nonnegative");
  if (n > 4) throw InvalidInput("tomogram_moments: orders above 4 exceed the grid accuracy guard");
  const Grid1D& x = m.tomogram().x();
  std::vector<double> fq(x.size());
  std::vector<double> fp(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double X = x.at(i);
    const double xn = std::pow(X, n);
    fq[i] = m(X, 1.0, 0.0) * xn;
    fp[i] = m(X, 0.0, 1.0) * xn;
  }
  return {trapezoid(fq, x.step()), trapezoid(fp, x.step())};
}

// ---------------------------------------------------------------------------

void validate_weight(const ParameterWeight& r, double tol) {
  auto nonneg = [](const std::vector<double>& v) {
    for (double x : v) {
      if (!(x >= 0.0)) throw InvalidInput("parameter weight: negative or NaN entry");
    }
  };
  auto check = [tol](double total) {
    if (std::abs(total - 1.0) > tol) {
      std::ostringstream msg;
      msg << "parameter weight: normalization " << total << " off by more than " << tol;
      throw InvalidInput(msg.str());
    }
  };
  if (const auto* c = std::get_if<CircleWeight>(&r)) {
    if (c->density.size() != c->angles.size()) throw InvalidInput("circle weight: size mismatch");
    nonneg(c->density);
    double s = 0.0;
    for (double v : c->density) s += v;
    check(s * c->angles.step());
  } else if (const auto* p = std::get_if<PlaneWeight>(&r)) {
    if (p->density.size() != p->mu.size() * p->nu.size()) throw InvalidInput("plane weight: size mismatch");
    nonneg(p->density);
    check(PhaseSpaceField{p->mu, p->nu, p->density}.integral());
  } else {
    const auto& d = std::get<DiscreteWeight>(r);
    if (d.mass.empty()) throw InvalidInput("discrete weight: empty");
    nonneg(d.mass);
    double s = 0.0;
    for (double v : d.mass) s += v;
    check(s);
  }
}

CircleWeight uniform_circle(const AngleGrid& angles) {
  return {angles, std::vector<double>(angles.size(), 1.0 / kTwoPi)};
}

CircleWeight von_mises_circle(const AngleGrid& angles, double center, double kappa) {
  if (!(kappa >= 0.0)) throw InvalidInput("von_mises_circle: kappa must be nonnegative");
  std::vector<double> r(angles.size());
  double s = 0.0;
  // exp(kappa (cos - 1)) keeps large kappa finite
  for (std::size_t k = 0; k < r.size(); ++k) {
    s += r[k] = std::exp(kappa * (std::cos(angles.at(k) - center) - 1.0));
  }
  for (double& v : r) v /= s * angles.step();
  return {angles, std::move(r)};
}

PlaneWeight gaussian_plane(const Grid1D& mu, const Grid1D& nu) {
  PhaseSpaceField f{mu, nu, std::vector<double>(mu.size() * nu.size())};
  for (std::size_t a = 0; a < mu.size(); ++a) {
    for (std::size_t b = 0; b < nu.size(); ++b) {
      f.values[a * nu.size() + b] = std::exp(-mu.at(a) * mu.at(a) - nu.at(b) * nu.at(b)) / kPi;
    }
  }
  const double total = f.integral();
  for (double& v : f.values) v /= total;
  return {mu, nu, std::move(f.values)};
}

DiscreteWeight uniform_discrete(std::size_t count) {
  if (count == 0) throw InvalidInput("uniform_discrete: empty support");
  return {std::vector<double>(count, 1.0 / static_cast<double>(count))};
}

double ModifiedOpticalTomogram::total() const {
  double s = 0.0;
  for (std::size_t k = 0; k < angles.size(); ++k) {
    s += trapezoid(std::span<const double>(values.data() + k * x.size(), x.size()), x.step());
  }
  return s * angles.step();
}

std::vector<double> ModifiedOpticalTomogram::x_marginal() const {
  std::vector<double> out(x.size(), 0.0);
  for (std::size_t k = 0; k < angles.size(); ++k) {
    for (std::size_t i = 0; i < x.size(); ++i) out[i] += values[k * x.size() + i] * angles.step();
  }
  return out;
}

std::vector<double> ModifiedOpticalTomogram::theta_marginal() const {
  std::vector<double> out(angles.size());
  for (std::size_t k = 0; k < angles.size(); ++k) {
    out[k] = trapezoid(std::span<const double>(values.data() + k * x.size(), x.size()), x.step());
  }
  return out;
}

ModifiedOpticalTomogram modify_optical(const OpticalTomogram& w, const CircleWeight& r) {
  validate_weight(r);
  if (!(r.angles == w.angles())) throw InvalidInput("modify_optical: weight and tomogram angle grids differ");
  ModifiedOpticalTomogram out{w.x(), w.angles(), w.values()};
  for (std::size_t k = 0; k < w.angles().size(); ++k) {
    for (std::size_t i = 0; i < w.x().size(); ++i) out.values[k * w.x().size() + i] *= r.density[k];
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<double> ramp_kernel(std::size_t count, double dx, double taper_fraction) {
  if (!(taper_fraction >= 0.0 && taper_fraction < 1.0)) {
    throw InvalidInput("ramp_kernel: taper fraction must lie in [0, 1)");
  }
  // h[n] = (1/2pi) int_{-R}^{R} |r| T(r) cos(r n dx) dr with R = pi/dx, written
  // as (R^2/pi) int_0^1 u T(u) cos(pi n u) du.
  const double band = kPi / dx;
  const double scale = band * band / kPi;
  const double u0 = 1.0 - taper_fraction;
  std::vector<double> h(count);
  for (std::size_t n = 0; n < count; ++n) {
    const double k = kPi * static_cast<double>(n);
    double v = int_u_cos(k, 0.0, 0.0, u0);
    if (taper_fraction > 0.0) {
      // T(u) = (1 + cos(w (u - u0))) / 2 on [u0, 1]
      const double w = kPi / taper_fraction;
      v += 0.5 * int_u_cos(k, 0.0, u0, 1.0);
      v += 0.25 * int_u_cos(k + w, -w * u0, u0, 1.0);
      v += 0.25 * int_u_cos(k - w, w * u0, u0, 1.0);
    }
    h[n] = scale * v;
  }
  return h;
}

Reconstruction inverse_radon(const OpticalTomogram& w, const Grid1D& q, const Grid1D& p,
                             const ReconstructOptions& options) {
  constexpr std::size_t kMinAngles = 16;
  const std::size_t na = w.angles().size();
  if (na < kMinAngles) {
    throw NumericGuard("inverse_radon: " + std::to_string(na) +
                       " angles is insufficient angular sampling (need at least 16)");
  }
  const Grid1D& x = w.x();
  const std::size_t nx = x.size();
  const auto h = ramp_kernel(nx, x.step(), options.taper_fraction);

  std::vector<double> filtered(na * nx);
  parallel_for(na, [&](std::size_t k) {
    const auto s = w.slice(k);
    double* g = filtered.data() + k * nx;
    for (std::size_t m = 0; m < nx; ++m) {
      double acc = 0.0;
      for (std::size_t n = 0; n < nx; ++n) acc += h[m > n ? m - n : n - m] * s[n];
      g[m] = acc * x.step();
    }
  });

  std::vector<double> cs(na);
  std::vector<double> sn(na);
  for (std::size_t k = 0; k < na; ++k) {
    cs[k] = std::cos(w.angles().at(k));
    sn[k] = std::sin(w.angles().at(k));
  }

  PhaseSpaceField field{q, p, std::vector<double>(q.size() * p.size(), 0.0)};
  const auto& kern = simd::active_kernels();
  const double scale = 1.0 / (2.0 * static_cast<double>(na));
  parallel_for(q.size(), [&](std::size_t i) {
    std::span<double> row(field.values.data() + i * p.size(), p.size());
    for (std::size_t k = 0; k < na; ++k) {
      const double s0 = q.at(i) * cs[k] + p.front() * sn[k];
      kern.backproject_row(std::span<const double>(filtered.data() + k * nx, nx), x.front(),
                           1.0 / x.step(), s0, p.step() * sn[k], row);
    }
    for (double& v : row) v *= scale;
  });

  Reconstruction out{std::move(field)};
  out.min_value = out.field.min();
  out.raw_integral = out.field.integral();
  if (options.clamp) {
    PhaseSpaceField negative = out.field;
    for (double& v : negative.values) v = std::min(v, 0.0);
    out.clamp_mass = -negative.integral() / out.raw_integral;
    for (double& v : out.field.values) v = std::max(v, 0.0);
    const double total = out.field.integral();
    if (!(total > 0.0)) throw NumericGuard("inverse_radon: reconstruction has no positive mass");
    for (double& v : out.field.values) v /= total;
  }
  return out;
}

// ---------------------------------------------------------------------------

ModifiedSymplecticSamples gaussian_modified_symplectic(const PhaseSpaceDensity& f, const Grid1D& x,
                                                       const Grid1D& mu, const Grid1D& nu,
                                                       std::size_t n_angles) {
  constexpr double extent = kGaussianParamExtent;
  if (mu.half_width() < extent - 1e-9 || nu.half_width() < extent - 1e-9) {
    throw NumericGuard("gaussian_modified_symplectic: (mu, nu) grid must cover |mu|, |nu| <= 4");
  }
  for (std::size_t a = 0; a < mu.size(); ++a) {
    for (std::size_t b = 0; b < nu.size(); ++b) {
      if (std::hypot(mu.at(a), nu.at(b)) < 1e-12) {
        throw InvalidInput("gaussian_modified_symplectic: (mu, nu) grid contains the singular origin");
      }
    }
  }
  const Grid1D y(std::hypot(f.q().half_width(), f.p().half_width()),
                 2 * std::max(f.q().size(), f.p().size()));
  const auto m = classical_evaluator(f, optical_tomogram_classical(f, y, AngleGrid(n_angles)));

  ModifiedSymplecticSamples out{x, mu, nu, std::vector<double>(mu.size() * nu.size() * x.size())};
  parallel_for(mu.size(), [&](std::size_t a) {
    for (std::size_t b = 0; b < nu.size(); ++b) {
      const double weight = std::exp(-mu.at(a) * mu.at(a) - nu.at(b) * nu.at(b)) / kPi;
      double* dst = out.values.data() + (a * nu.size() + b) * x.size();
      for (std::size_t i = 0; i < x.size(); ++i) dst[i] = weight * m(x.at(i), mu.at(a), nu.at(b));
    }
  });

  PhaseSpaceField plane{mu, nu, std::vector<double>(mu.size() * nu.size())};
  for (std::size_t n = 0; n < plane.values.size(); ++n) {
    plane.values[n] = trapezoid(std::span<const double>(out.values.data() + n * x.size(), x.size()), x.step());
  }
  out.total = plane.integral();
  if (std::abs(out.total - 1.0) > 1e-3) {
    std::ostringstream msg;
    msg << "gaussian_modified_symplectic: total integral " << out.total
        << " off by more than 1e-3 (X grid does not cover the scaled support)";
    throw NumericGuard(msg.str());
  }
  return out;
}

OpticalTomogram optical_from_gaussian_modified(const ModifiedSymplecticSamples& mg, const Grid1D& x,
                                               const AngleGrid& angles) {
  const Grid1D& mu = mg.mu;
  const Grid1D& nu = mg.nu;
  constexpr double extent = kGaussianParamExtent;
  if (mu.half_width() > extent + 1e-9 || nu.half_width() > extent + 1e-9) {
    throw NumericGuard("invert_gaussian_modified: de-weighting exp(mu^2 + nu^2) is restricted to |mu|, |nu| <= 4");
  }
  const std::size_t nx = mg.x.size();

  // r M(r Y, mu, nu) is homogeneous of degree 0, i.e. w(Y, atan2(nu, mu)).
  auto deweighted = [&](std::size_t a, std::size_t b, double Y) {
    const double m = mu.at(a);
    const double n = nu.at(b);
    const double r = std::hypot(m, n);
    std::span<const double> s(mg.values.data() + (a * nu.size() + b) * nx, nx);
    return r * kPi * std::exp(m * m + n * n) * sample_linear(s, mg.x, r * Y);
  };

  std::vector<double> values(x.size() * angles.size());
  parallel_for(angles.size(), [&](std::size_t k) {
    const double c = std::cos(angles.at(k));
    const double s = std::sin(angles.at(k));
    const double u = (c - mu.front()) / mu.step();
    const double v = (s - nu.front()) / nu.step();
    const auto a = std::min(static_cast<std::size_t>(u), mu.size() - 2);
    const auto b = std::min(static_cast<std::size_t>(v), nu.size() - 2);
    const double tu = u - static_cast<double>(a);
    const double tv = v - static_cast<double>(b);
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double Y = x.at(i);
      const double lo = (1 - tv) * deweighted(a, b, Y) + tv * deweighted(a, b + 1, Y);
      const double hi = (1 - tv) * deweighted(a + 1, b, Y) + tv * deweighted(a + 1, b + 1, Y);
      values[k * x.size() + i] = std::max(0.0, (1 - tu) * lo + tu * hi);
    }
  });
  return OpticalTomogram(x, angles, std::move(values));
}

Reconstruction invert_gaussian_modified(const ModifiedSymplecticSamples& mg, const Grid1D& q,
                                        const Grid1D& p, const GaussianInversionOptions& options) {
  const Grid1D x = options.x.value_or(Grid1D(std::numbers::sqrt2 * std::max(q.half_width(), p.half_width()),
                                             std::max(q.size(), p.size())));
  return inverse_radon(optical_from_gaussian_modified(mg, x, options.angles), q, p);
}

} // namespace tomo

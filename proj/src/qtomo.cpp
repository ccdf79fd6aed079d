#include "tomokit/qtomo.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "tomokit/error.hpp"
#include "tomokit/parallel.hpp"
#include "tomokit/simd/kernels.hpp"

namespace tomo {
namespace {

constexpr double kPi = std::numbers::pi;

struct Samples {
  Grid1D grid;
  const std::vector<cplx>& amp;
};

cplx interpolate(const Samples& f, double x) {
  const Grid1D& g = f.grid;
  const double u = (x - g.front()) / g.step();
  if (u < 0.0 || u > static_cast<double>(g.size() - 1)) return {0.0, 0.0};
  auto i = static_cast<std::size_t>(u);
  if (i >= g.size() - 1) i = g.size() - 2;
  const double t = u - static_cast<double>(i);
  return f.amp[i] + t * (f.amp[i + 1] - f.amp[i]);
}

// f(y_k) exp(i cot y_k^2 / 2) dy
std::vector<cplx> chirped(const Samples& f, double cot) {
  std::vector<cplx> out(f.amp.size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    const double y = f.grid.at(k);
    out[k] = f.amp[k] * std::polar(f.grid.step(), 0.5 * cot * y * y);
  }
  return out;
}

std::vector<cplx> kernel_integral(const Samples& f, double theta, const Grid1D& out) {
  const double s = std::sin(theta);
  const double cot = std::cos(theta) / s;
  const auto a = chirped(f, cot);
  const auto& kern = simd::active_kernels();
  std::vector<cplx> I(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    I[i] = kern.chirp_dot(a, f.grid.front(), f.grid.step(), out.at(i) / s);
  }
  return I;
}

// Largest per-sample phase advance of the kernel exponent stays below pi.
bool quadrature_resolved(const Grid1D& in, const Grid1D& out, double theta) {
  const double s = std::abs(std::sin(theta));
  const double slope = (std::abs(std::cos(theta)) * in.half_width() + out.half_width()) / s;
  return slope * in.step() <= kPi;
}

std::vector<cplx> transform(const Samples& f, double t, const Grid1D& out, bool split = true) {
  const double s = std::sin(t);
  std::vector<cplx> res(out.size());
  if (std::abs(s) < kSingularAngleEps) {
    const double sign = std::cos(t) > 0.0 ? 1.0 : -1.0;
    for (std::size_t i = 0; i < out.size(); ++i) res[i] = interpolate(f, sign * out.at(i));
    return res;
  }
  if (split && !quadrature_resolved(f.grid, out, t)) {
    const auto mid = transform(f, wrap_angle(t - 0.5 * kPi), f.grid, false);
    return transform(Samples{f.grid, mid}, 0.5 * kPi, out, false);
  }
  const double cot = std::cos(t) / s;
  const auto I = kernel_integral(f, t, out);
  const cplx pref = 1.0 / std::sqrt(cplx{0.0, 2.0 * kPi * s});
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double X = out.at(i);
    res[i] = pref * std::polar(1.0, 0.5 * cot * X * X) * I[i];
  }
  return res;
}

} // namespace

std::vector<double> FrFTResult::density() const {
  std::vector<double> d(amplitudes.size());
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = std::norm(amplitudes[k]);
  return d;
}

std::vector<cplx> raw_kernel_integral(const WaveFunction& psi, double theta, const Grid1D& out) {
  if (std::abs(std::sin(theta)) < kSingularAngleEps) {
    throw InvalidInput("raw_kernel_integral: sin(theta) too close to zero");
  }
  return kernel_integral(Samples{psi.grid(), psi.amplitudes()}, theta, out);
}

FrFTResult fractional_fourier(const WaveFunction& psi, double theta, std::optional<Grid1D> out) {
  const Grid1D xg = out.value_or(psi.grid());
  const double t = wrap_angle(theta);
  FrFTResult res{xg, transform(Samples{psi.grid(), psi.amplitudes()}, t, xg), t, 0.0};

  const double norm = trapezoid(res.density(), xg.step());
  res.norm_deficit = std::abs(1.0 - norm);
  if (res.norm_deficit > kFrftNormGuard) {
    std::ostringstream msg;
    msg << "fractional_fourier: output norm " << norm << " at theta = " << t
        << " (deficit beyond " << kFrftNormGuard << "; grid aliasing or insufficient resolution)";
    throw NumericGuard(msg.str());
  }
  const double fix = 1.0 / std::sqrt(norm);
  for (auto& v : res.amplitudes) v *= fix;
  return res;
}

OpticalTomogram optical_tomogram_quantum(const WaveFunction& psi, const Grid1D& x,
                                         const AngleGrid& angles) {
  std::vector<double> values(x.size() * angles.size());
  parallel_for(angles.size(), [&](std::size_t k) {
    const auto r = fractional_fourier(psi, angles.at(k), x);
    for (std::size_t i = 0; i < x.size(); ++i) values[k * x.size() + i] = std::norm(r.amplitudes[i]);
  });
  return OpticalTomogram(x, angles, std::move(values));
}

SymplecticEvaluator quantum_evaluator(const WaveFunction& psi, OpticalTomogram w) {
  std::vector<AxisSlice> axis;
  for (int q = 0; q < 4; ++q) {
    const double theta = 0.5 * kPi * q;
    axis.push_back({theta, fractional_fourier(psi, theta, w.x()).density()});
  }
  return SymplecticEvaluator(std::move(w), std::move(axis));
}

Reconstruction wigner_from_tomogram(const OpticalTomogram& w, const Grid1D& q, const Grid1D& p) {
  return inverse_radon(w, q, p, ReconstructOptions{.clamp = false});
}

} // namespace tomo

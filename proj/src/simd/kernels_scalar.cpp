#include <algorithm>
#include <cmath>

#include "tomokit/simd/kernels.hpp"

namespace tomo::simd {
namespace {

std::complex<double> chirp_dot_scalar(std::span<const std::complex<double>> a, double y0, double dy,
                                      double freq) {
  const std::complex<double> step = std::polar(1.0, -freq * dy);
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t k0 = 0; k0 < a.size(); k0 += kChirpBlock) {
    const std::size_t k1 = std::min(a.size(), k0 + kChirpBlock);
    std::complex<double> z = std::polar(1.0, -freq * (y0 + static_cast<double>(k0) * dy));
    double re = 0.0;
    double im = 0.0;
    for (std::size_t k = k0; k < k1; ++k) {
      const double ar = a[k].real();
      const double ai = a[k].imag();
      re += ar * z.real() - ai * z.imag();
      im += ar * z.imag() + ai * z.real();
      const double zr = z.real() * step.real() - z.imag() * step.imag();
      const double zi = z.real() * step.imag() + z.imag() * step.real();
      z = {zr, zi};
    }
    acc += std::complex<double>{re, im};
  }
  return acc;
}

double bilinear(const BilinearGrid& f, double q, double p) {
  const double u = (q - f.q_front) * f.inv_dq;
  const double v = (p - f.p_front) * f.inv_dp;
  const double fu = std::floor(u);
  const double fv = std::floor(v);
  if (fu < 0.0 || fv < 0.0 || fu >= static_cast<double>(f.nq - 1) ||
      fv >= static_cast<double>(f.np - 1)) {
    return 0.0;
  }
  const auto i = static_cast<std::size_t>(fu);
  const auto j = static_cast<std::size_t>(fv);
  const double tu = u - fu;
  const double tv = v - fv;
  const double* row0 = f.values + i * f.np + j;
  const double* row1 = row0 + f.np;
  const double lo = row0[0] + tv * (row0[1] - row0[0]);
  const double hi = row1[0] + tv * (row1[1] - row1[0]);
  return lo + tu * (hi - lo);
}

double line_sum_scalar(const BilinearGrid& f, double q0, double p0, double dq, double dp,
                       std::size_t count) {
  double sum = 0.0;
  for (std::size_t m = 0; m < count; ++m) {
    const double t = static_cast<double>(m);
    sum += bilinear(f, q0 + t * dq, p0 + t * dp);
  }
  return sum;
}

void backproject_row_scalar(std::span<const double> g, double x_front, double inv_dx, double s0,
                            double ds, std::span<double> out) {
  const double last = static_cast<double>(g.size()) - 1.0;
  for (std::size_t j = 0; j < out.size(); ++j) {
    const double u = (s0 + static_cast<double>(j) * ds - x_front) * inv_dx;
    const double fu = std::floor(u);
    if (fu < 0.0 || fu >= last) continue;
    const auto i = static_cast<std::size_t>(fu);
    const double t = u - fu;
    out[j] += g[i] + t * (g[i + 1] - g[i]);
  }
}

} // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", &chirp_dot_scalar, &line_sum_scalar,
                                 &backproject_row_scalar};
  return table;
}

} // namespace tomo::simd

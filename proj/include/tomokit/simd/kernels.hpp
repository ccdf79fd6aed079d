#pragma once

// Inner-loop kernels shared by the tomography engines. Every kernel has a
// scalar reference in kernels_scalar.cpp; kernels_avx2.cpp provides AVX2/FMA
// variants that must agree with the reference to rounding (see test_simd).

#include <complex>
#include <cstddef>
#include <span>

namespace tomo::simd {

/// Row-major (q-major) samples of a function on a uniform 2D grid; zero
/// outside the grid cells.
struct BilinearGrid {
  const double* values = nullptr;
  std::size_t nq = 0;
  std::size_t np = 0;
  double q_front = 0.0;
  double p_front = 0.0;
  double inv_dq = 0.0;
  double inv_dp = 0.0;
};

struct KernelTable {
  const char* name;

  /// sum_k a[k] * exp(-i * freq * (y0 + k * dy)). The phase is advanced by
  /// recurrence and reseeded exactly every kChirpBlock samples.
  std::complex<double> (*chirp_dot)(std::span<const std::complex<double>> a, double y0, double dy,
                                    double freq);

  /// sum_{m < count} f(q0 + m * dq, p0 + m * dp) with bilinear interpolation.
  double (*line_sum)(const BilinearGrid& f, double q0, double p0, double dq, double dp,
                     std::size_t count);

  /// out[j] += g(s0 + j * ds), g linearly interpolated from samples at
  /// x_front + i / inv_dx, zero outside.
  void (*backproject_row)(std::span<const double> g, double x_front, double inv_dx, double s0,
                          double ds, std::span<double> out);
};

inline constexpr std::size_t kChirpBlock = 64;

const KernelTable& scalar_kernels();

/// AVX2/FMA table, or nullptr when not compiled in or the CPU lacks support.
const KernelTable* avx2_kernels();

/// Selected once per process: AVX2 when available unless TOMOKIT_SIMD=scalar.
const KernelTable& active_kernels();

} // namespace tomo::simd

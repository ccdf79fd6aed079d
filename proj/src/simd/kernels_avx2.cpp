// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "tomokit/simd/kernels.hpp"

namespace tomo::simd {
namespace {

// Two interleaved complex products per register: (a0*b0, a1*b1).
inline __m256d cmul2(__m256d a, __m256d b) {
  const __m256d a_re = _mm256_movedup_pd(a);
  const __m256d a_im = _mm256_permute_pd(a, 0xF);
  const __m256d b_swap = _mm256_permute_pd(b, 0x5);
  return _mm256_fmaddsub_pd(a_re, b, _mm256_mul_pd(a_im, b_swap));
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

std::complex<double> chirp_dot_avx2(std::span<const std::complex<double>> a, double y0, double dy,
                                    double freq) {
  const std::complex<double> step = std::polar(1.0, -freq * dy);
  const std::complex<double> step2 = step * step;
  const __m256d r2 = _mm256_setr_pd(step2.real(), step2.imag(), step2.real(), step2.imag());
  const auto* raw = reinterpret_cast<const double*>(a.data());

  __m256d acc = _mm256_setzero_pd();
  std::complex<double> tail{0.0, 0.0};
  for (std::size_t k0 = 0; k0 < a.size(); k0 += kChirpBlock) {
    const std::size_t k1 = std::min(a.size(), k0 + kChirpBlock);
    const std::complex<double> z0 = std::polar(1.0, -freq * (y0 + static_cast<double>(k0) * dy));
    const std::complex<double> z1 = z0 * step;
    __m256d z = _mm256_setr_pd(z0.real(), z0.imag(), z1.real(), z1.imag());
    std::size_t k = k0;
    for (; k + 2 <= k1; k += 2) {
      acc = _mm256_add_pd(acc, cmul2(_mm256_loadu_pd(raw + 2 * k), z));
      z = cmul2(z, r2);
    }
    if (k < k1) {
      alignas(32) double zz[4];
      _mm256_store_pd(zz, z);
      tail += a[k] * std::complex<double>{zz[0], zz[1]};
    }
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  return std::complex<double>{lanes[0] + lanes[2], lanes[1] + lanes[3]} + tail;
}

double line_sum_avx2(const BilinearGrid& f, double q0, double p0, double dq, double dp,
                     std::size_t count) {
  const __m256d lane = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
  const __m256d u0 = _mm256_set1_pd((q0 - f.q_front) * f.inv_dq);
  const __m256d v0 = _mm256_set1_pd((p0 - f.p_front) * f.inv_dp);
  const __m256d du = _mm256_set1_pd(dq * f.inv_dq);
  const __m256d dv = _mm256_set1_pd(dp * f.inv_dp);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d umax = _mm256_set1_pd(static_cast<double>(f.nq - 1));
  const __m256d vmax = _mm256_set1_pd(static_cast<double>(f.np - 1));
  const __m256d stride = _mm256_set1_pd(static_cast<double>(f.np));
  const double* base = f.values;
  const auto np = static_cast<long long>(f.np);

  __m256d acc = _mm256_setzero_pd();
  std::size_t m = 0;
  for (; m + 4 <= count; m += 4) {
    const __m256d t = _mm256_add_pd(_mm256_set1_pd(static_cast<double>(m)), lane);
    const __m256d u = _mm256_fmadd_pd(t, du, u0);
    const __m256d v = _mm256_fmadd_pd(t, dv, v0);
    const __m256d fu = _mm256_floor_pd(u);
    const __m256d fv = _mm256_floor_pd(v);
    const __m256d ok = _mm256_and_pd(
        _mm256_and_pd(_mm256_cmp_pd(fu, zero, _CMP_GE_OQ), _mm256_cmp_pd(fv, zero, _CMP_GE_OQ)),
        _mm256_and_pd(_mm256_cmp_pd(fu, umax, _CMP_LT_OQ), _mm256_cmp_pd(fv, vmax, _CMP_LT_OQ)));
    if (_mm256_movemask_pd(ok) == 0) continue;
    const __m256d flat = _mm256_blendv_pd(zero, _mm256_fmadd_pd(fu, stride, fv), ok);
    const __m128i idx = _mm256_cvtpd_epi32(flat);
    const __m256d c00 = _mm256_i32gather_pd(base, idx, 8);
    const __m256d c01 = _mm256_i32gather_pd(base + 1, idx, 8);
    const __m256d c10 = _mm256_i32gather_pd(base + np, idx, 8);
    const __m256d c11 = _mm256_i32gather_pd(base + np + 1, idx, 8);
    const __m256d tu = _mm256_sub_pd(u, fu);
    const __m256d tv = _mm256_sub_pd(v, fv);
    const __m256d lo = _mm256_fmadd_pd(tv, _mm256_sub_pd(c01, c00), c00);
    const __m256d hi = _mm256_fmadd_pd(tv, _mm256_sub_pd(c11, c10), c10);
    const __m256d val = _mm256_fmadd_pd(tu, _mm256_sub_pd(hi, lo), lo);
    acc = _mm256_add_pd(acc, _mm256_and_pd(val, ok));
  }
  double sum = hsum(acc);
  if (m < count) {
    sum += scalar_kernels().line_sum(f, q0 + static_cast<double>(m) * dq,
                                     p0 + static_cast<double>(m) * dp, dq, dp, count - m);
  }
  return sum;
}

void backproject_row_avx2(std::span<const double> g, double x_front, double inv_dx, double s0,
                          double ds, std::span<double> out) {
  const __m256d lane = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
  const __m256d u0 = _mm256_set1_pd((s0 - x_front) * inv_dx);
  const __m256d du = _mm256_set1_pd(ds * inv_dx);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d umax = _mm256_set1_pd(static_cast<double>(g.size()) - 1.0);
  const double* base = g.data();

  std::size_t j = 0;
  for (; j + 4 <= out.size(); j += 4) {
    const __m256d t = _mm256_add_pd(_mm256_set1_pd(static_cast<double>(j)), lane);
    const __m256d u = _mm256_fmadd_pd(t, du, u0);
    const __m256d fu = _mm256_floor_pd(u);
    const __m256d ok =
        _mm256_and_pd(_mm256_cmp_pd(fu, zero, _CMP_GE_OQ), _mm256_cmp_pd(fu, umax, _CMP_LT_OQ));
    if (_mm256_movemask_pd(ok) == 0) continue;
    const __m128i idx = _mm256_cvtpd_epi32(_mm256_blendv_pd(zero, fu, ok));
    const __m256d g0 = _mm256_i32gather_pd(base, idx, 8);
    const __m256d g1 = _mm256_i32gather_pd(base + 1, idx, 8);
    const __m256d val = _mm256_fmadd_pd(_mm256_sub_pd(u, fu), _mm256_sub_pd(g1, g0), g0);
    double* dst = out.data() + j;
    _mm256_storeu_pd(dst, _mm256_add_pd(_mm256_loadu_pd(dst), _mm256_and_pd(val, ok)));
  }
  if (j < out.size()) {
    scalar_kernels().backproject_row(g, x_front, inv_dx, s0 + static_cast<double>(j) * ds, ds,
                                     out.subspan(j));
  }
}

} // namespace

const KernelTable& avx2_kernel_table() {
  static const KernelTable table{"avx2", &chirp_dot_avx2, &line_sum_avx2, &backproject_row_avx2};
  return table;
}

} // namespace tomo::simd

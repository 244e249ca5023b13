// AVX2/FMA kernel variants. Each loop applies exactly the per-element
// operations of the scalar reference (same fma placement, one rounding per
// step), so outputs are bit-identical; tails reuse the scalar expressions.

#include "spcd/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

#include <cmath>

namespace spcd::kernels {

namespace {

inline __m256d negate(__m256d v) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  return _mm256_xor_pd(v, sign);
}

void assemble_level_avx2(const AssembleInput& in, double* lower, double* diag,
                         double* upper, double* rhs) {
  const double base_s = in.react + in.inv_step;
  const __m256d eps = _mm256_set1_pd(in.eps);
  const __m256d base = _mm256_set1_pd(base_s);
  const __m256d inv_step = _mm256_set1_pd(in.inv_step);
  int q = 0;
  for (; q + 4 <= in.n; q += 4) {
    const __m256d glo = _mm256_loadu_pd(in.geom_lo + q);
    const __m256d gup = _mm256_loadu_pd(in.geom_up + q);
    const __m256d conv = _mm256_loadu_pd(in.conv + q);
    const __m256d lo = negate(_mm256_fmadd_pd(eps, glo, conv));
    const __m256d up = negate(_mm256_mul_pd(eps, gup));
    _mm256_storeu_pd(lower + q, lo);
    _mm256_storeu_pd(upper + q, up);
    _mm256_storeu_pd(diag + q, _mm256_sub_pd(base, _mm256_add_pd(lo, up)));
    const __m256d prev = _mm256_loadu_pd(in.prev + q);
    const __m256d src = _mm256_loadu_pd(in.source + q);
    _mm256_storeu_pd(rhs + q, _mm256_fmadd_pd(prev, inv_step, src));
  }
  for (; q < in.n; ++q) {
    const double lo = -std::fma(in.eps, in.geom_lo[q], in.conv[q]);
    const double up = -(in.eps * in.geom_up[q]);
    lower[q] = lo;
    upper[q] = up;
    diag[q] = base_s - (lo + up);
    rhs[q] = std::fma(in.prev[q], in.inv_step, in.source[q]);
  }
}

void gather_lerp_avx2(const double* values, const std::int32_t* cell,
                      const double* weight, double* out, int n) {
  const __m256d one = _mm256_set1_pd(1.0);
  int q = 0;
  for (; q + 4 <= n; q += 4) {
    const __m128i idx =
        _mm_loadu_si128(reinterpret_cast<const __m128i*>(cell + q));
    const __m256d v0 = _mm256_i32gather_pd(values, idx, 8);
    const __m256d v1 = _mm256_i32gather_pd(values + 1, idx, 8);
    const __m256d w = _mm256_loadu_pd(weight + q);
    const __m256d cw = _mm256_sub_pd(one, w);
    _mm256_storeu_pd(out + q, _mm256_fmadd_pd(v0, cw, _mm256_mul_pd(v1, w)));
  }
  for (; q < n; ++q) {
    const double v0 = values[cell[q]];
    const double v1 = values[cell[q] + 1];
    out[q] = std::fma(v0, 1.0 - weight[q], v1 * weight[q]);
  }
}

void blend_rows_avx2(const double* lo, const double* hi, double weight,
                     double* out, int n) {
  const double cw_s = 1.0 - weight;
  const __m256d w = _mm256_set1_pd(weight);
  const __m256d cw = _mm256_set1_pd(cw_s);
  int q = 0;
  for (; q + 4 <= n; q += 4) {
    const __m256d l = _mm256_loadu_pd(lo + q);
    const __m256d h = _mm256_loadu_pd(hi + q);
    _mm256_storeu_pd(out + q, _mm256_fmadd_pd(l, cw, _mm256_mul_pd(h, w)));
  }
  for (; q < n; ++q) {
    out[q] = std::fma(lo[q], cw_s, hi[q] * weight);
  }
}

double max_abs_diff_avx2(const double* a, const double* b, int n) {
  const __m256d abs_mask = _mm256_castsi256_pd(
      _mm256_set1_epi64x(0x7fffffffffffffffLL));
  __m256d acc = _mm256_setzero_pd();
  int q = 0;
  for (; q + 4 <= n; q += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + q),
                                    _mm256_loadu_pd(b + q));
    acc = _mm256_max_pd(acc, _mm256_and_pd(d, abs_mask));
  }
  __m128d fold = _mm_max_pd(_mm256_castpd256_pd128(acc),
                            _mm256_extractf128_pd(acc, 1));
  fold = _mm_max_sd(fold, _mm_unpackhi_pd(fold, fold));
  double m = _mm_cvtsd_f64(fold);
  for (; q < n; ++q) {
    m = std::max(m, std::abs(a[q] - b[q]));
  }
  return m;
}

}  // namespace

const Backend* avx2_backend_impl() {
  static const Backend backend{
      "avx2",
      &assemble_level_avx2,
      &gather_lerp_avx2,
      &blend_rows_avx2,
      &max_abs_diff_avx2,
  };
  return &backend;
}

}  // namespace spcd::kernels

#else

namespace spcd::kernels {
const Backend* avx2_backend_impl() { return nullptr; }
}  // namespace spcd::kernels

#endif

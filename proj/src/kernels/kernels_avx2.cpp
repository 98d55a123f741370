// Compiled with -mavx2; only reached after a CPUID check.

#include <immintrin.h>

#include "conehydro/kernels.hpp"

namespace conehydro::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// Lanes with |q| < pivmin become -pivmin; same rule as the scalar path.
inline __m256d guard(__m256d q, __m256d pivmin, __m256d neg_pivmin, __m256d abs_mask) {
  const __m256d small = _mm256_cmp_pd(_mm256_and_pd(q, abs_mask), pivmin, _CMP_LT_OQ);
  return _mm256_blendv_pd(q, neg_pivmin, small);
}

} // namespace

CountBatch sturm_count4(std::span<const double> diag, std::span<const double> off_sq,
                        const ShiftBatch &shifts, double pivmin) {
  const __m256d lambda = _mm256_loadu_pd(shifts.data());
  const __m256d piv = _mm256_set1_pd(pivmin);
  const __m256d neg_piv = _mm256_set1_pd(-pivmin);
  const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  const __m256d zero = _mm256_setzero_pd();

  __m256i count = _mm256_setzero_si256();
  __m256d q = _mm256_sub_pd(_mm256_set1_pd(diag[0]), lambda);
  q = guard(q, piv, neg_piv, abs_mask);
  count = _mm256_sub_epi64(count, _mm256_castpd_si256(_mm256_cmp_pd(q, zero, _CMP_LT_OQ)));
  for (std::size_t i = 1; i < diag.size(); ++i) {
    const __m256d shifted = _mm256_sub_pd(_mm256_set1_pd(diag[i]), lambda);
    q = _mm256_sub_pd(shifted, _mm256_div_pd(_mm256_set1_pd(off_sq[i - 1]), q));
    q = guard(q, piv, neg_piv, abs_mask);
    count = _mm256_sub_epi64(count, _mm256_castpd_si256(_mm256_cmp_pd(q, zero, _CMP_LT_OQ)));
  }
  alignas(32) long long lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i *>(lanes), count);
  return {static_cast<std::size_t>(lanes[0]), static_cast<std::size_t>(lanes[1]),
          static_cast<std::size_t>(lanes[2]), static_cast<std::size_t>(lanes[3])};
}

void tridiag_apply(std::span<const double> diag, std::span<const double> off,
                   std::span<const double> x, std::span<double> y) {
  const std::size_t n = diag.size();
  if (n < 6) {
    scalar::tridiag_apply(diag, off, x, y);
    return;
  }
  y[0] = diag[0] * x[0] + off[0] * x[1];
  std::size_t i = 1;
  // interior rows i..i+3 need x[i-1..i+4] and off[i-1..i+3]
  for (; i + 4 < n; i += 4) {
    const __m256d d = _mm256_loadu_pd(&diag[i]);
    const __m256d xc = _mm256_loadu_pd(&x[i]);
    const __m256d xl = _mm256_loadu_pd(&x[i - 1]);
    const __m256d xr = _mm256_loadu_pd(&x[i + 1]);
    const __m256d el = _mm256_loadu_pd(&off[i - 1]);
    const __m256d er = _mm256_loadu_pd(&off[i]);
    const __m256d acc = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(d, xc), _mm256_mul_pd(el, xl)),
                                      _mm256_mul_pd(er, xr));
    _mm256_storeu_pd(&y[i], acc);
  }
  for (; i + 1 < n; ++i) y[i] = diag[i] * x[i] + off[i - 1] * x[i - 1] + off[i] * x[i + 1];
  y[n - 1] = diag[n - 1] * x[n - 1] + off[n - 2] * x[n - 2];
}

double dot(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  __m256d a0 = _mm256_setzero_pd();
  __m256d a1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    a0 = _mm256_add_pd(a0, _mm256_mul_pd(_mm256_loadu_pd(&x[i]), _mm256_loadu_pd(&y[i])));
    a1 = _mm256_add_pd(a1, _mm256_mul_pd(_mm256_loadu_pd(&x[i + 4]), _mm256_loadu_pd(&y[i + 4])));
  }
  double s = hsum(_mm256_add_pd(a0, a1));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

double weighted_dot(std::span<const double> w, std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  __m256d a0 = _mm256_setzero_pd();
  __m256d a1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    a0 = _mm256_add_pd(a0, _mm256_mul_pd(_mm256_mul_pd(_mm256_loadu_pd(&w[i]), _mm256_loadu_pd(&x[i])),
                                         _mm256_loadu_pd(&y[i])));
    a1 = _mm256_add_pd(a1, _mm256_mul_pd(_mm256_mul_pd(_mm256_loadu_pd(&w[i + 4]), _mm256_loadu_pd(&x[i + 4])),
                                         _mm256_loadu_pd(&y[i + 4])));
  }
  double s = hsum(_mm256_add_pd(a0, a1));
  for (; i < n; ++i) s += w[i] * x[i] * y[i];
  return s;
}

} // namespace conehydro::kernels::avx2

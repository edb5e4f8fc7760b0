// AVX2 + FMA variants of the jet kernels.
// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include "finsler/jets/kernels.hpp"

namespace finsler::jets::kernels {

namespace detail {

namespace {

inline double horizontal_sum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d shuf = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

void truncated_product(const double* a, const double* b, double* out,
                       const std::uint32_t* offsets, const std::int32_t* lhs,
                       const std::int32_t* rhs, std::size_t outputs) {
  for (std::size_t k = 0; k < outputs; ++k) {
    std::uint32_t q = offsets[k];
    const std::uint32_t end = offsets[k + 1];
    double acc = 0.0;
    if (end - q >= 4) {
      __m256d vacc = _mm256_setzero_pd();
      for (; q + 4 <= end; q += 4) {
        __m128i il = _mm_loadu_si128(reinterpret_cast<const __m128i*>(lhs + q));
        __m128i ir = _mm_loadu_si128(reinterpret_cast<const __m128i*>(rhs + q));
        __m256d va = _mm256_i32gather_pd(a, il, 8);
        __m256d vb = _mm256_i32gather_pd(b, ir, 8);
        vacc = _mm256_fmadd_pd(va, vb, vacc);
      }
      acc = horizontal_sum(vacc);
    }
    for (; q < end; ++q) acc += a[lhs[q]] * b[rhs[q]];
    out[k] = acc;
  }
}

void linear_combination(double alpha, const double* a, double beta, const double* b,
                        double* out, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  const __m256d vb = _mm256_set1_pd(beta);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d r = _mm256_mul_pd(vb, _mm256_loadu_pd(b + k));
    r = _mm256_fmadd_pd(va, _mm256_loadu_pd(a + k), r);
    _mm256_storeu_pd(out + k, r);
  }
  for (; k < n; ++k) out[k] = alpha * a[k] + beta * b[k];
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d r = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + k), _mm256_loadu_pd(y + k));
    _mm256_storeu_pd(y + k, r);
  }
  for (; k < n; ++k) y[k] += alpha * x[k];
}

}  // namespace

const KernelSet& avx2_set() {
  static const KernelSet set{"avx2", &truncated_product, &linear_combination, &axpy};
  return set;
}

}  // namespace detail

}  // namespace finsler::jets::kernels

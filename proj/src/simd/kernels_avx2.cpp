// Compiled with -mavx2 only (no -mfma); callers reach it through the dispatch
// table after a CPUID check.
#include "aitd/simd/kernels.hpp"

#include <immintrin.h>

namespace aitd::simd {
namespace {

double reduce(__m256d acc) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d p = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_add_pd(acc, p);
  }
  double sum = reduce(acc);
  for (; i < n; ++i) {
    const double p = a[i] * b[i];
    sum = sum + p;
  }
  return sum;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d p = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), p));
  }
  for (; i < n; ++i) {
    const double p = alpha * x[i];
    y[i] = y[i] + p;
  }
}

void scale_avx2(double alpha, double* x, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(x + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), va));
  for (; i < n; ++i) x[i] *= alpha;
}

double sum_squares_avx2(const double* x, std::size_t n) { return dot_avx2(x, x, n); }

double sparse_dot_avx2(const std::uint32_t* indices, const double* values, std::size_t nnz,
                       const double* dense) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= nnz; k += 4) {
    const __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(indices + k));
    const __m256d gathered = _mm256_i32gather_pd(dense, idx, 8);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(values + k), gathered));
  }
  double sum = reduce(acc);
  for (; k < nnz; ++k) {
    const double p = values[k] * dense[indices[k]];
    sum = sum + p;
  }
  return sum;
}

}  // namespace

const KernelTable* avx2_table() {
  static const KernelTable table{Isa::Avx2,       "avx2",           dot_avx2, axpy_avx2,
                                 scale_avx2,      sum_squares_avx2, sparse_dot_avx2};
  return &table;
}

}  // namespace aitd::simd

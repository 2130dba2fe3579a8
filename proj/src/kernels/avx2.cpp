// AVX2 + FMA kernels. This translation unit is compiled with -mavx2 -mfma and
// must only be entered after the dispatcher has confirmed CPU support.

#include <immintrin.h>

#include <algorithm>
#include <limits>

#include "kernels_internal.hpp"

namespace monobn::simd::detail {
namespace {

constexpr std::size_t kLanes = 4;

double horizontal_sum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d swapped = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

double horizontal_max(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_max_pd(lo, hi);
  __m128d swapped = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_max_sd(lo, swapped));
}

__m128i load_indices(const std::uint32_t* idx) {
  return _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx));
}

double sum(const double* x, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 * kLanes <= n; i += 2 * kLanes) {
    acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
    acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(x + i + kLanes));
  }
  for (; i + kLanes <= n; i += kLanes) acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
  double acc = horizontal_sum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += x[i];
  return acc;
}

void scale(double* x, std::size_t n, double factor) {
  const __m256d f = _mm256_set1_pd(factor);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    _mm256_storeu_pd(x + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), f));
  for (; i < n; ++i) x[i] *= factor;
}

double dot(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
  double out = horizontal_sum(acc);
  for (; i < n; ++i) out += x[i] * y[i];
  return out;
}

double max_difference(const double* a, const double* b, std::size_t n) {
  double m = -std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  if (n >= kLanes) {
    __m256d vm = _mm256_set1_pd(m);
    for (; i + kLanes <= n; i += kLanes)
      vm = _mm256_max_pd(vm, _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    m = horizontal_max(vm);
  }
  for (; i < n; ++i) m = std::max(m, a[i] - b[i]);
  return m;
}

// In-register inclusive scan of four lanes, then a broadcast carry.
void prefix_sum(const double* in, double* out, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  __m256d carry = zero;
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    __m256d v = _mm256_loadu_pd(in + i);
    __m256d shift1 = _mm256_blend_pd(_mm256_permute4x64_pd(v, _MM_SHUFFLE(2, 1, 0, 0)), zero,
                                     0b0001);
    v = _mm256_add_pd(v, shift1);
    __m256d shift2 = _mm256_blend_pd(_mm256_permute4x64_pd(v, _MM_SHUFFLE(1, 0, 0, 0)), zero,
                                     0b0011);
    v = _mm256_add_pd(_mm256_add_pd(v, shift2), carry);
    _mm256_storeu_pd(out + i, v);
    carry = _mm256_permute4x64_pd(v, _MM_SHUFFLE(3, 3, 3, 3));
  }
  double acc = _mm256_cvtsd_f64(carry);
  for (; i < n; ++i) {
    acc += in[i];
    out[i] = acc;
  }
}

void gather_multiply(double* out, const double* a, const std::uint32_t* ia, const double* b,
                     const std::uint32_t* ib, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    __m256d va = _mm256_i32gather_pd(a, load_indices(ia + i), 8);
    __m256d vb = _mm256_i32gather_pd(b, load_indices(ib + i), 8);
    _mm256_storeu_pd(out + i, _mm256_mul_pd(va, vb));
  }
  for (; i < n; ++i) out[i] = a[ia[i]] * b[ib[i]];
}

void gather_accumulate(double* out, const double* in, const std::uint32_t* idx,
                       std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    __m256d g = _mm256_i32gather_pd(in, load_indices(idx + i), 8);
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(out + i), g));
  }
  for (; i < n; ++i) out[i] += in[idx[i]];
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{Backend::Avx2,  sum,          scale,           dot,
                                 max_difference, prefix_sum,   gather_multiply,
                                 gather_accumulate};
  return table;
}

}  // namespace monobn::simd::detail

// Scalar reference kernels. These define the semantics the vector variants
// are tested against.

#include <algorithm>
#include <limits>

#include "kernels_internal.hpp"

namespace monobn::simd::detail {
namespace {

double sum(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

void scale(double* x, std::size_t n, double factor) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= factor;
}

double dot(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

double max_difference(const double* a, const double* b, std::size_t n) {
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, a[i] - b[i]);
  return m;
}

void prefix_sum(const double* in, double* out, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += in[i];
    out[i] = acc;
  }
}

void gather_multiply(double* out, const double* a, const std::uint32_t* ia, const double* b,
                     const std::uint32_t* ib, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[ia[i]] * b[ib[i]];
}

void gather_accumulate(double* out, const double* in, const std::uint32_t* idx,
                       std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] += in[idx[i]];
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{Backend::Scalar, sum,          scale,           dot,
                                 max_difference,  prefix_sum,   gather_multiply,
                                 gather_accumulate};
  return table;
}

}  // namespace monobn::simd::detail

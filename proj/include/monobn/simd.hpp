#pragma once

/// @file
/// Arithmetic inner loops used by inference and dominance checks.
///
/// Every kernel has a scalar reference implementation and, on x86-64, an
/// AVX2+FMA variant. The active backend is picked once at first use from
/// CPUID and can be overridden with the MONOBN_SIMD environment variable
/// ("scalar" or "avx2") or set_backend(). Backends agree to within a few ulps;
/// reductions may associate differently.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace monobn::simd {

enum class Backend { Scalar, Avx2 };

std::string_view to_string(Backend b);

struct KernelTable {
  Backend backend;
  double (*sum)(const double* x, std::size_t n);
  void (*scale)(double* x, std::size_t n, double factor);
  double (*dot)(const double* x, const double* y, std::size_t n);
  /// max_i (a[i] - b[i]); -inf for n == 0.
  double (*max_difference)(const double* a, const double* b, std::size_t n);
  void (*prefix_sum)(const double* in, double* out, std::size_t n);
  /// out[i] = a[ia[i]] * b[ib[i]]
  void (*gather_multiply)(double* out, const double* a, const std::uint32_t* ia,
                          const double* b, const std::uint32_t* ib, std::size_t n);
  /// out[i] += in[idx[i]]
  void (*gather_accumulate)(double* out, const double* in, const std::uint32_t* idx,
                            std::size_t n);
};

bool backend_available(Backend b);
/// Kernel table of a specific backend; throws std::invalid_argument if the
/// backend is not available on this machine.
const KernelTable& kernels(Backend b);
/// Currently active kernel table.
const KernelTable& kernels();
Backend active_backend();
/// Throws std::invalid_argument if the backend is unavailable.
void set_backend(Backend b);

// Span conveniences over the active table.

double sum(std::span<const double> x);
void scale(std::span<double> x, double factor);
double dot(std::span<const double> x, std::span<const double> y);
double max_difference(std::span<const double> a, std::span<const double> b);
void prefix_sum(std::span<const double> in, std::span<double> out);
void gather_multiply(std::span<double> out, std::span<const double> a,
                     std::span<const std::uint32_t> ia, std::span<const double> b,
                     std::span<const std::uint32_t> ib);
void gather_accumulate(std::span<double> out, std::span<const double> in,
                       std::span<const std::uint32_t> idx);

}  // namespace monobn::simd

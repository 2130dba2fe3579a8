#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "kernels_internal.hpp"

namespace monobn::simd {
namespace {

bool cpu_has_avx2() {
#if MONOBN_HAVE_AVX2 && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* initial_table() {
  if (const char* env = std::getenv("MONOBN_SIMD")) {
    const std::string choice = env;
    if (choice == "scalar") return &detail::scalar_table();
    if (choice == "avx2" && backend_available(Backend::Avx2)) return &kernels(Backend::Avx2);
  }
  if (backend_available(Backend::Avx2)) return &kernels(Backend::Avx2);
  return &detail::scalar_table();
}

std::atomic<const KernelTable*>& active() {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string(what) + ": length mismatch");
}

}  // namespace

std::string_view to_string(Backend b) {
  switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
  }
  return "?";
}

bool backend_available(Backend b) {
  if (b == Backend::Scalar) return true;
  static const bool avx2 = cpu_has_avx2();
  return avx2;
}

const KernelTable& kernels(Backend b) {
  if (!backend_available(b))
    throw std::invalid_argument("SIMD backend " + std::string(to_string(b)) +
                                " is not available on this machine");
#if MONOBN_HAVE_AVX2
  if (b == Backend::Avx2) return detail::avx2_table();
#endif
  return detail::scalar_table();
}

const KernelTable& kernels() { return *active().load(std::memory_order_acquire); }

Backend active_backend() { return kernels().backend; }

void set_backend(Backend b) { active().store(&kernels(b), std::memory_order_release); }

double sum(std::span<const double> x) { return kernels().sum(x.data(), x.size()); }

void scale(std::span<double> x, double factor) { kernels().scale(x.data(), x.size(), factor); }

double dot(std::span<const double> x, std::span<const double> y) {
  require_same_size(x.size(), y.size(), "dot");
  return kernels().dot(x.data(), y.data(), x.size());
}

double max_difference(std::span<const double> a, std::span<const double> b) {
  require_same_size(a.size(), b.size(), "max_difference");
  return kernels().max_difference(a.data(), b.data(), a.size());
}

void prefix_sum(std::span<const double> in, std::span<double> out) {
  require_same_size(in.size(), out.size(), "prefix_sum");
  kernels().prefix_sum(in.data(), out.data(), in.size());
}

void gather_multiply(std::span<double> out, std::span<const double> a,
                     std::span<const std::uint32_t> ia, std::span<const double> b,
                     std::span<const std::uint32_t> ib) {
  require_same_size(out.size(), ia.size(), "gather_multiply");
  require_same_size(out.size(), ib.size(), "gather_multiply");
  kernels().gather_multiply(out.data(), a.data(), ia.data(), b.data(), ib.data(), out.size());
}

void gather_accumulate(std::span<double> out, std::span<const double> in,
                       std::span<const std::uint32_t> idx) {
  require_same_size(out.size(), idx.size(), "gather_accumulate");
  kernels().gather_accumulate(out.data(), in.data(), idx.data(), out.size());
}

}  // namespace monobn::simd

#include <atomic>
#include <cstdlib>
#include <string>
#include <string_view>

#include "conehydro/error.hpp"
#include "conehydro/kernels.hpp"

namespace conehydro::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(CONEHYDRO_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa initial_isa() {
  if (const char *env = std::getenv("CONEHYDRO_SIMD")) {
    const std::string_view v(env);
    if (v == "scalar") return Isa::Scalar;
    if (v == "avx2" && cpu_has_avx2()) return Isa::Avx2;
  }
  return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa> &current() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

} // namespace

bool isa_supported(Isa isa) { return isa == Isa::Scalar || cpu_has_avx2(); }

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_isa(Isa isa) {
  if (!isa_supported(isa)) throw DomainError(std::string("SIMD variant not available: ") + isa_name(isa));
  current().store(isa, std::memory_order_relaxed);
}

const char *isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

CountBatch sturm_count4(std::span<const double> diag, std::span<const double> off_sq,
                        const ShiftBatch &shifts, double pivmin) {
#if defined(CONEHYDRO_HAVE_AVX2_KERNELS)
  if (active_isa() == Isa::Avx2) return avx2::sturm_count4(diag, off_sq, shifts, pivmin);
#endif
  return scalar::sturm_count4(diag, off_sq, shifts, pivmin);
}

void tridiag_apply(std::span<const double> diag, std::span<const double> off,
                   std::span<const double> x, std::span<double> y) {
#if defined(CONEHYDRO_HAVE_AVX2_KERNELS)
  if (active_isa() == Isa::Avx2) return avx2::tridiag_apply(diag, off, x, y);
#endif
  scalar::tridiag_apply(diag, off, x, y);
}

double dot(std::span<const double> x, std::span<const double> y) {
#if defined(CONEHYDRO_HAVE_AVX2_KERNELS)
  if (active_isa() == Isa::Avx2) return avx2::dot(x, y);
#endif
  return scalar::dot(x, y);
}

double weighted_dot(std::span<const double> w, std::span<const double> x, std::span<const double> y) {
#if defined(CONEHYDRO_HAVE_AVX2_KERNELS)
  if (active_isa() == Isa::Avx2) return avx2::weighted_dot(w, x, y);
#endif
  return scalar::weighted_dot(w, x, y);
}

} // namespace conehydro::kernels

#pragma once

// Data-parallel inner loops shared by the solver and the observables.
//
// Every kernel has a portable scalar reference and, on x86-64, an AVX2
// variant. The variant is picked once at first use from CPUID; the
// environment variable CONEHYDRO_SIMD=scalar|avx2 or set_isa() overrides it.
// Sturm counts and tridiagonal products are bit-identical across variants;
// reductions agree to rounding (different summation order).

#include <array>
#include <cstddef>
#include <span>

namespace conehydro::kernels {

enum class Isa { Scalar, Avx2 };

bool isa_supported(Isa isa);
Isa active_isa();
/// Throws DomainError if `isa` is not supported on this CPU/build.
void set_isa(Isa isa);
const char *isa_name(Isa isa);

using ShiftBatch = std::array<double, 4>;
using CountBatch = std::array<std::size_t, 4>;

/// Number of eigenvalues of the symmetric tridiagonal (diag, off) below each
/// shift, from the LDL^T pivot signs. `off_sq` holds the squared
/// off-diagonal (size n-1). Pivots with |d| < pivmin are replaced by -pivmin.
CountBatch sturm_count4(std::span<const double> diag, std::span<const double> off_sq,
                        const ShiftBatch &shifts, double pivmin);

/// y = T x for the symmetric tridiagonal (diag, off).
void tridiag_apply(std::span<const double> diag, std::span<const double> off,
                   std::span<const double> x, std::span<double> y);

/// sum_i x_i y_i
double dot(std::span<const double> x, std::span<const double> y);

/// sum_i w_i x_i y_i
double weighted_dot(std::span<const double> w, std::span<const double> x, std::span<const double> y);

// Fixed-variant entry points for equivalence tests.
namespace scalar {
std::size_t sturm_count(std::span<const double> diag, std::span<const double> off_sq, double shift,
                        double pivmin);
CountBatch sturm_count4(std::span<const double> diag, std::span<const double> off_sq,
                        const ShiftBatch &shifts, double pivmin);
void tridiag_apply(std::span<const double> diag, std::span<const double> off,
                   std::span<const double> x, std::span<double> y);
double dot(std::span<const double> x, std::span<const double> y);
double weighted_dot(std::span<const double> w, std::span<const double> x, std::span<const double> y);
} // namespace scalar

#if defined(CONEHYDRO_HAVE_AVX2_KERNELS)
namespace avx2 {
CountBatch sturm_count4(std::span<const double> diag, std::span<const double> off_sq,
                        const ShiftBatch &shifts, double pivmin);
void tridiag_apply(std::span<const double> diag, std::span<const double> off,
                   std::span<const double> x, std::span<double> y);
double dot(std::span<const double> x, std::span<const double> y);
double weighted_dot(std::span<const double> w, std::span<const double> x, std::span<const double> y);
} // namespace avx2
#endif

} // namespace conehydro::kernels

#pragma once

// Order-zero Bessel J0, Neumann Y0 and Struve H0 for real nonnegative arguments.
//
// Each function switches between a power series (small x) and an asymptotic
// form (large x). For H0 the middle range uses H0 = Y0 + (H0 - Y0) with the
// difference taken from its Laplace integral
//   H0(x) - Y0(x) = (2/pi) int_0^inf exp(-x t) / sqrt(1 + t^2) dt.
// Power series are summed in long double; see the crossover constants below.

namespace conehydro::special {

inline constexpr double euler_gamma = 0.577215664901532860606512090082;
inline constexpr double pi = 3.14159265358979323846264338328;

namespace crossover {
/// J0/Y0: power series below, Hankel expansion above.
inline constexpr double bessel = 17.0;
/// H0: power series below, Y0 + Laplace integral above.
inline constexpr double struve_series = 8.0;
/// H0 - Y0: Laplace integral below, asymptotic series above.
inline constexpr double struve_asymptotic = 40.0;
} // namespace crossover

double bessel_j0(double x);
/// Throws DomainError for x <= 0.
double bessel_y0(double x);
/// Throws DomainError for x < 0.
double struve_h0(double x);
/// H0(x) - Y0(x), strictly positive for x > 0. Throws DomainError for x <= 0.
double struve_h0_minus_y0(double x);

/// Individual branches, exposed for the branch-consistency tests.
namespace branch {
double j0_series(double x);
double j0_asymptotic(double x);
double y0_series(double x);
double y0_asymptotic(double x);
double h0_series(double x);
double h0_minus_y0_integral(double x);
double h0_minus_y0_asymptotic(double x);
} // namespace branch

} // namespace conehydro::special

#include "conehydro/special_functions.hpp"

#include <cmath>
#include <string>

#include "conehydro/error.hpp"

namespace conehydro::special {

namespace {

using real = long double;

constexpr real pi_l = 3.141592653589793238462643383279502884L;
constexpr real gamma_l = 0.577215664901532860606512090082402431L;
constexpr real series_eps = 1e-21L;

// Hankel expansion: P0 and Q0 with a_k = prod_{j<k} (-(2j+1)^2) / (k! 8^k).
void hankel_pq(real x, real &p, real &q) {
  p = 0.0L;
  q = 0.0L;
  real a = 1.0L; // a_k / x^k
  real prev = INFINITY;
  for (int k = 0; k < 200; ++k) {
    const real mag = std::fabs(a);
    if (mag > prev) break; // asymptotic series: stop at the smallest term
    // k even contributes (-1)^{k/2} a_k / x^k to P, k odd (-1)^{(k-1)/2} a_k / x^k to Q
    const real sign = ((k / 2) % 2 == 0) ? 1.0L : -1.0L;
    if (k % 2 == 0)
      p += sign * a;
    else
      q += sign * a;
    if (mag < 1e-22L) break;
    prev = mag;
    const real odd = 2.0L * k + 1.0L;
    a *= -(odd * odd) / (8.0L * (k + 1) * x);
  }
}

void check_positive(double x, const char *name) {
  if (!(x > 0.0)) throw DomainError(std::string(name) + " needs x > 0, got " + std::to_string(x));
}

} // namespace

namespace branch {

double j0_series(double xd) {
  const real y = static_cast<real>(xd) * xd / 4.0L;
  real term = 1.0L;
  real sum = 1.0L;
  for (int k = 1; k < 500; ++k) {
    term *= -y / (static_cast<real>(k) * k);
    sum += term;
    if (std::fabs(term) < series_eps * (1.0L + std::fabs(sum)) && static_cast<real>(k) > y) break;
  }
  return static_cast<double>(sum);
}

double y0_series(double xd) {
  const real x = xd;
  const real y = x * x / 4.0L;
  real term = 1.0L; // (-1)^k y^k / (k!)^2
  real harmonic = 0.0L;
  real sum = 0.0L;
  for (int k = 1; k < 500; ++k) {
    term *= -y / (static_cast<real>(k) * k);
    harmonic += 1.0L / k;
    const real t = -term * harmonic; // (-1)^{k+1} H_k y^k / (k!)^2
    sum += t;
    if (std::fabs(t) < series_eps * (1.0L + std::fabs(sum)) && static_cast<real>(k) > y) break;
  }
  const real j0 = j0_series(xd);
  return static_cast<double>((2.0L / pi_l) * ((std::log(x / 2.0L) + gamma_l) * j0 + sum));
}

double j0_asymptotic(double xd) {
  const real x = xd;
  real p, q;
  hankel_pq(x, p, q);
  const real chi = x - pi_l / 4.0L;
  return static_cast<double>(std::sqrt(2.0L / (pi_l * x)) * (p * std::cos(chi) - q * std::sin(chi)));
}

double y0_asymptotic(double xd) {
  const real x = xd;
  real p, q;
  hankel_pq(x, p, q);
  const real chi = x - pi_l / 4.0L;
  return static_cast<double>(std::sqrt(2.0L / (pi_l * x)) * (p * std::sin(chi) + q * std::cos(chi)));
}

double h0_series(double xd) {
  const real half = static_cast<real>(xd) / 2.0L;
  const real y = half * half;
  // k = 0 term: (x/2) / Gamma(3/2)^2 = (x/2) * 4 / pi
  real term = half * 4.0L / pi_l;
  real sum = term;
  for (int k = 0; k < 500; ++k) {
    const real g = k + 1.5L;
    term *= -y / (g * g);
    sum += term;
    if (std::fabs(term) < series_eps * (1.0L + std::fabs(sum)) && static_cast<real>(k) > y) break;
  }
  return static_cast<double>(sum);
}

double h0_minus_y0_integral(double xd) {
  // (2 / (pi x)) int_0^inf exp(-u) / sqrt(1 + (u/x)^2) du, with the
  // double-exponential map u = exp(t - exp(-t)).
  const real x = xd;
  constexpr real step = 1.0L / 64.0L;
  constexpr real t_lo = -6.5L;
  constexpr real t_hi = 4.5L;
  real sum = 0.0L;
  const int n = static_cast<int>((t_hi - t_lo) / step);
  for (int i = 0; i <= n; ++i) {
    const real t = t_lo + i * step;
    const real e = std::exp(-t);
    const real u = std::exp(t - e);
    const real w = u * (1.0L + e);
    const real ux = u / x;
    sum += w * std::exp(-u) / std::sqrt(1.0L + ux * ux);
  }
  return static_cast<double>(2.0L / (pi_l * x) * sum * step);
}

double h0_minus_y0_asymptotic(double xd) {
  // (2/(pi x)) sum_k (-1)^k ((2k-1)!!)^2 / x^{2k}
  const real x = xd;
  const real inv2 = 1.0L / (x * x);
  real term = 1.0L;
  real sum = 1.0L;
  real prev = 1.0L;
  for (int k = 1; k < 200; ++k) {
    const real odd = 2.0L * k - 1.0L;
    const real next = -term * odd * odd * inv2;
    if (std::fabs(next) > prev) break;
    term = next;
    sum += term;
    prev = std::fabs(term);
    if (prev < 1e-22L) break;
  }
  return static_cast<double>(2.0L / (pi_l * x) * sum);
}

} // namespace branch

double bessel_j0(double x) {
  x = std::fabs(x);
  return x < crossover::bessel ? branch::j0_series(x) : branch::j0_asymptotic(x);
}

double bessel_y0(double x) {
  check_positive(x, "bessel_y0");
  return x < crossover::bessel ? branch::y0_series(x) : branch::y0_asymptotic(x);
}

double struve_h0_minus_y0(double x) {
  check_positive(x, "struve_h0_minus_y0");
  if (x < crossover::struve_series) return branch::h0_series(x) - branch::y0_series(x);
  if (x < crossover::struve_asymptotic) return branch::h0_minus_y0_integral(x);
  return branch::h0_minus_y0_asymptotic(x);
}

double struve_h0(double x) {
  if (x < 0.0 || std::isnan(x)) throw DomainError("struve_h0 needs x >= 0");
  if (x == 0.0) return 0.0;
  if (x < crossover::struve_series) return branch::h0_series(x);
  return bessel_y0(x) + struve_h0_minus_y0(x);
}

} // namespace conehydro::special

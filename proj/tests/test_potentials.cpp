#include <doctest.h>

#include <cmath>
#include <vector>

#include "conehydro/constants.hpp"
#include "conehydro/error.hpp"
#include "conehydro/potentials.hpp"
#include "mpfr_oracle.hpp"

using namespace conehydro;

TEST_CASE("effective potential values") {
  CHECK(effective_potential(1.0, 0) == -0.25);
  CHECK(effective_potential(2.0, 1) == doctest::Approx(0.75 / 4 + std::log(2.0)));
  CHECK(effective_potential(1.0, -3) == effective_potential(1.0, 3));
  CHECK(log2d_potential(std::exp(1.0)) == doctest::Approx(1.0));
  CHECK_THROWS_AS(effective_potential(0.0, 1), DomainError);
  CHECK_THROWS_AS(effective_potential(-1.0, 1), DomainError);
}

TEST_CASE("minimum of the effective potential") {
  CHECK(effective_potential_minimum(3) == doctest::Approx(std::sqrt(17.5)));
  CHECK(effective_potential_minimum(3) == doctest::Approx(4.1833).epsilon(1e-4));
  for (int la = 1; la <= 12; ++la) {
    const double rs = effective_potential_minimum(la);
    CHECK(std::abs(effective_potential_derivative(rs, la)) < 1e-14 / rs);
    CHECK(effective_potential(rs * 0.99, la) > effective_potential(rs, la));
    CHECK(effective_potential(rs * 1.01, la) > effective_potential(rs, la));
  }
  CHECK_THROWS_AS(effective_potential_minimum(0), DomainError);
}

TEST_CASE("minimum deepens less and moves outward as l_alpha grows") {
  // l = 3 with alpha = 1, 3/4, 3/5 gives l_alpha = 3, 4, 5.
  double last_r = 0, last_v = -1e300;
  for (int la : {3, 4, 5}) {
    const double r = effective_potential_minimum(la);
    const double v = effective_potential(r, la);
    CHECK(r > last_r);
    CHECK(v > last_v);
    last_r = r;
    last_v = v;
  }
}

TEST_CASE("analytic derivative matches finite differences on 100 points") {
  for (int la : {0, 1, 2, 3, 4, 5}) {
    for (int i = 0; i < 100; ++i) {
      const double r = 0.2 * std::pow(250.0, i / 99.0); // 0.2 .. 50
      const double h = 1e-3 * r;
      // Five-point stencil, truncation O(h^4).
      const double fd = (-effective_potential(r + 2 * h, la) + 8 * effective_potential(r + h, la) -
                         8 * effective_potential(r - h, la) + effective_potential(r - 2 * h, la)) /
                        (12 * h);
      const double an = effective_potential_derivative(r, la);
      // Scale by the size of the two competing terms so the check stays
      // relative near the stationary point.
      const double scale = std::abs(2 * (la * la - 0.25) / (r * r * r)) + 1 / r;
      CAPTURE(la);
      CAPTURE(r);
      CHECK(std::abs(fd - an) <= 1e-8 * scale);
    }
  }
}

TEST_CASE("l_alpha = 0 effective potential is monotone increasing") {
  double last = effective_potential(1e-3, 0);
  for (double r = 2e-3; r < 100; r *= 1.05) {
    const double v = effective_potential(r, 0);
    CHECK(v > last);
    last = v;
  }
}

TEST_CASE("Rytova-Keldysh limits") {
  const double r_s = 4.4686e-9;
  // Long range: Coulomb.
  CHECK(rk_full(100 * r_s, r_s, 1.0) / coulomb3d(100 * r_s, 1.0) == doctest::Approx(1.0).epsilon(2e-2));
  CHECK(rk_full(1000 * r_s, r_s, 1.0) / coulomb3d(1000 * r_s, 1.0) == doctest::Approx(1.0).epsilon(1e-5));
  // Short range: logarithmic; relative gap shrinks like x / |ln(x/2) + gamma|.
  double last_gap = 1.0;
  for (double x : {1e-1, 1e-2, 1e-3, 1e-4}) {
    const double full = rk_full(x * r_s, r_s, 1.0);
    const double gap = std::abs(full - rk_log_approx(x * r_s, r_s, 1.0)) / std::abs(full);
    CHECK(gap < last_gap);
    CHECK(gap < 1.5 * x / std::abs(std::log(x / 2) + constants::euler_gamma));
    last_gap = gap;
  }
}

TEST_CASE("short-range gap at r = r_s/10 matches the extended-precision value") {
  // (pi/2)(H0 - Y0)(0.1) against -(ln 0.05 + gamma).
  const double full = 0.5 * constants::pi * oracle::h0_minus_y0(0.1);
  const double approx = -(std::log(0.05) + constants::euler_gamma);
  const double expected_gap = (full - approx) / full;
  CHECK(expected_gap == doctest::Approx(0.03638).epsilon(1e-3));

  const double r_s = 1e-9;
  const double f = rk_full(0.1 * r_s, r_s, 1.0);
  const double gap = std::abs(f - rk_log_approx(0.1 * r_s, r_s, 1.0)) / std::abs(f);
  CHECK(gap == doctest::Approx(expected_gap).epsilon(1e-9));
}

TEST_CASE("SI potentials scale with kappa and r_s") {
  const double r = 1e-9, r_s = 3e-9;
  CHECK(rk_full(r, r_s, 2.0) == doctest::Approx(rk_full(r, r_s, 1.0) / 2).epsilon(1e-14));
  CHECK(coulomb3d(r, 4.0) == doctest::Approx(coulomb3d(r, 1.0) / 4).epsilon(1e-14));
  // Depends on r only through r / r_s, up to the 1/r_s prefactor.
  CHECK(rk_full(10 * r, 10 * r_s, 1.0) == doctest::Approx(rk_full(r, r_s, 1.0) / 10).epsilon(1e-13));
  CHECK(rk_log_approx(10 * r, 10 * r_s, 1.0) == doctest::Approx(rk_log_approx(r, r_s, 1.0) / 10).epsilon(1e-13));
  CHECK(rk_full(r, r_s, 1.0) < 0.0);
}

TEST_CASE("potential specs") {
  CHECK(evaluate(Log2D{}, 1.0) == 0.0);
  CHECK(evaluate(Effective{3}, 2.0) == effective_potential(2.0, 3));
  CHECK(evaluate(Coulomb3D{2.0}, 1e-9) == coulomb3d(1e-9, 2.0));
  CHECK(evaluate(RKFull{2e-9, 1.0}, 1e-9) == rk_full(1e-9, 2e-9, 1.0));
  CHECK(evaluate(RKLogApprox{2e-9, 1.0}, 1e-9) == rk_log_approx(1e-9, 2e-9, 1.0));
  CHECK_FALSE(is_si(Effective{1}));
  CHECK(is_si(RKFull{}));
  CHECK_THROWS_AS(validate(RKFull{-1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(validate(Coulomb3D{0.5}), DomainError);
  CHECK_THROWS_AS(rk_full(1e-9, 1e-9, 0.9), DomainError);
}

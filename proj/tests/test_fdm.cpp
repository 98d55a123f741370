#include <doctest.h>

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "conehydro/convergence.hpp"
#include "conehydro/error.hpp"
#include "conehydro/fdm.hpp"
#include "reference_data.hpp"

using namespace conehydro;

namespace {

// Full spectrum from LAPACK's implicit QL/QR, an independent path to the
// counts the Sturm sequence produces.
std::vector<double> full_spectrum(const TridiagonalOperator &op) {
  std::vector<double> d = op.diagonal, e = op.off_diagonal;
  const auto info = LAPACKE_dstev(LAPACK_COL_MAJOR, 'N', static_cast<lapack_int>(d.size()), d.data(), e.data(),
                                  nullptr, 1);
  REQUIRE(info == 0);
  return d;
}

double max_abs(const std::vector<double> &v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

const SolverConfig coarse{RadialGrid::cell_centered(50.0, 5000)};

} // namespace

TEST_CASE("2x2 operator has its closed-form eigenvalues") {
  const double a = 2.0, b = 5.0, c = 1.5;
  TridiagonalOperator op{{a, b}, {c}, RadialGrid(1.0, 2.0, 3), 0, Stencil::Central};
  const double mid = 0.5 * (a + b), rad = std::hypot(0.5 * (a - b), c);
  const auto ev = lowest_eigenvalues(op, 2, 1e-14);
  CHECK(ev[0] == doctest::Approx(mid - rad).epsilon(1e-14));
  CHECK(ev[1] == doctest::Approx(mid + rad).epsilon(1e-14));
  CHECK(op.count_below(mid) == 1);
  CHECK(op.count_below(mid - rad - 1e-9) == 0);
  CHECK(op.count_below(mid + rad + 1e-9) == 2);
}

TEST_CASE("central stencil entries") {
  const auto grid = RadialGrid::vertex(10.0, 200);
  const auto op = discretize(0, grid, Stencil::Central);
  const double h = grid.spacing();
  for (double e : op.off_diagonal) CHECK(e == -1.0 / (h * h));
  for (std::size_t i = 0; i < grid.size(); i += 17) {
    const double r = grid.node(i);
    CHECK(op.diagonal[i] == doctest::Approx(2.0 / (h * h) - 1.0 / (4.0 * r * r) + std::log(r)).epsilon(1e-15));
  }
}

TEST_CASE("cylindrical stencil is symmetric and needs a cell-centred grid") {
  const auto grid = RadialGrid::cell_centered(10.0, 100);
  const auto op = discretize(3, grid);
  const double h = grid.spacing();
  for (std::size_t i = 0; i < grid.size(); i += 11)
    CHECK(op.diagonal[i] == doctest::Approx(2.0 / (h * h) + 9.0 / std::pow(grid.node(i), 2) + std::log(grid.node(i))));
  // Off-diagonal tends to -1/h^2 away from the origin.
  CHECK(op.off_diagonal.back() == doctest::Approx(-1.0 / (h * h)).epsilon(1e-4));
  CHECK_THROWS_AS(discretize(0, RadialGrid::vertex(10.0, 100)), DomainError);
}

TEST_CASE("manufactured solution: central stencil reproduces -u'' + V u at second order") {
  // u = r e^{-r}: -u'' = (2 - r) e^{-r}.
  const int la = 2;
  std::vector<double> errors;
  for (std::size_t n : {500u, 1000u, 2000u}) {
    const auto grid = RadialGrid::vertex(30.0, n);
    const auto op = discretize(la, grid, Stencil::Central);
    std::vector<double> u(n), tu(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = grid.node(i) * std::exp(-grid.node(i));
    op.apply(u, tu);
    double err = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = grid.node(i);
      const double exact = (2.0 - r) * std::exp(-r) + ((la * la - 0.25) / (r * r) + std::log(r)) * u[i];
      err = std::max(err, std::abs(tu[i] - exact));
    }
    errors.push_back(err);
  }
  CHECK(errors[0] / errors[1] == doctest::Approx(4.0).epsilon(0.1));
  CHECK(errors[1] / errors[2] == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("manufactured solution: cylindrical stencil at second order") {
  // R = sqrt(r) f with f = r^l e^{-r^2}:
  //   -(1/r)(r f')' + l^2 f / r^2 = r^l (4(l + 1) - 4 r^2) e^{-r^2}.
  // For l >= 1 the first cells carry an O(h) consistency error from f''' / r,
  // which does not spoil the O(h^2) eigenvalues; the max norm is taken away
  // from the origin and the near-origin error is bounded by C h.
  for (int la : {0, 1, 3}) {
    std::vector<double> errors;
    for (std::size_t n : {400u, 800u, 1600u}) {
      const auto grid = RadialGrid::cell_centered(8.0, n);
      const auto op = discretize(la, grid);
      std::vector<double> R(n), tR(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double r = grid.node(i);
        R[i] = std::sqrt(r) * std::pow(r, la) * std::exp(-r * r);
      }
      op.apply(R, tR);
      double err = 0, near = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const double r = grid.node(i);
        const double f = std::pow(r, la) * std::exp(-r * r);
        const double exact = std::sqrt(r) * (std::pow(r, la) * (4.0 * (la + 1) - 4.0 * r * r) * std::exp(-r * r) +
                                             std::log(r) * f);
        const double e = std::abs(tR[i] - exact) / std::sqrt(r);
        if (r >= 0.5)
          err = std::max(err, e);
        else
          near = std::max(near, e);
      }
      CHECK(near <= 4.0 * grid.spacing());
      errors.push_back(err);
    }
    CAPTURE(la);
    CHECK(errors[0] / errors[1] == doctest::Approx(4.0).epsilon(0.15));
    CHECK(errors[1] / errors[2] == doctest::Approx(4.0).epsilon(0.15));
  }
}

TEST_CASE("Sturm count equals the count from a full diagonalization") {
  std::mt19937 rng(12345);
  for (int la : {0, 1, 4}) {
    for (auto stencil : {Stencil::Cylindrical, Stencil::Central}) {
      const auto grid = stencil == Stencil::Cylindrical ? RadialGrid::cell_centered(20.0, 400)
                                                        : RadialGrid::vertex(20.0, 400);
      const auto op = discretize(la, grid, stencil);
      const auto spectrum = full_spectrum(op);
      std::uniform_real_distribution<double> shift(spectrum.front() - 1.0, spectrum[40]);
      for (int k = 0; k < 20; ++k) {
        const double s = shift(rng);
        const auto expected = static_cast<std::size_t>(
            std::count_if(spectrum.begin(), spectrum.end(), [s](double e) { return e < s; }));
        REQUIRE(op.count_below(s) == expected);
      }
    }
  }
}

TEST_CASE("bisection eigenvalues match the full diagonalization") {
  const auto op = discretize(2, RadialGrid::cell_centered(30.0, 600));
  const auto spectrum = full_spectrum(op);
  const auto ev = lowest_eigenvalues(op, 6, 1e-12);
  for (std::size_t i = 0; i < ev.size(); ++i) CHECK(std::abs(ev[i] - spectrum[i]) < 1e-9);
}

TEST_CASE("Gershgorin interval encloses the spectrum") {
  const auto op = discretize(1, RadialGrid::cell_centered(20.0, 300));
  const auto spectrum = full_spectrum(op);
  const auto [lo, hi] = op.gershgorin();
  CHECK(lo < spectrum.front());
  CHECK(hi > spectrum.back());
  CHECK(op.count_below(lo) == 0);
  CHECK(op.count_below(hi) == op.size());
}

TEST_CASE("reference states at the default grid") {
  const auto ground = solve_state(make_alpha(1, 1), 0, 1);
  CHECK(std::abs(ground.energy - 0.52639) < 2e-4);
  CHECK(std::abs(solve_state(make_alpha(1, 1), 1, 1).energy - 1.38618) < 2e-4);
  CHECK(std::abs(solve_state(make_alpha(3, 4), 3, 1).energy - 2.39628) < 2e-4);
  CHECK(std::abs(solve_state(make_alpha(3, 5), 3, 5).energy - 3.29374) < 2e-4);

  const auto zero = solve_states(make_alpha(1, 1), 0, 5);
  for (int n = 1; n <= 5; ++n) CHECK(std::abs(zero[n - 1].energy - reference::spectrum[n - 1].energy) < 2e-4);
}

TEST_CASE("spectrum depends only on |l_alpha|") {
  const auto a = solve_states(make_alpha(3, 5), 3, 3, coarse);
  const auto b = solve_states(make_alpha(1, 1), 5, 3, coarse);
  const auto c = solve_states(make_alpha(4, 5), 4, 3, coarse);
  const auto d = solve_states(make_alpha(3, 5), -3, 3, coarse);
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(a[i].energy - b[i].energy) <= 1e-10);
    CHECK(std::abs(a[i].energy - c[i].energy) <= 1e-10);
    CHECK(std::abs(a[i].energy - d[i].energy) <= 1e-10);
  }
  const auto e = solve_states(make_alpha(3, 4), 3, 5);
  const auto f = solve_states(make_alpha(1, 1), 4, 5);
  for (int i = 0; i < 5; ++i) CHECK(std::abs(e[i].energy - f[i].energy) <= 1e-10);
}

TEST_CASE("energies increase in n and in |l_alpha|") {
  std::vector<std::vector<double>> table;
  for (int la = 0; la <= 6; ++la) table.push_back(lowest_eigenvalues(discretize(la, coarse.grid), 5, 1e-11));
  for (int la = 0; la <= 6; ++la)
    for (int n = 1; n < 5; ++n) CHECK(table[la][n] > table[la][n - 1]);
  for (int la = 1; la <= 6; ++la)
    for (int n = 0; n < 5; ++n) CHECK(table[la][n] > table[la - 1][n]);
}

TEST_CASE("eigenvectors: nodes, normalization, decay, residual, sign") {
  const auto states = solve_states(make_alpha(3, 5), 3, 5);
  const auto op = discretize(5, default_grid());
  const double h = default_grid().spacing();
  for (const auto &s : states) {
    CAPTURE(s.quantum.n);
    CHECK(count_sign_changes(s.radial) == s.quantum.n - 1);
    double sum = 0;
    for (double x : s.radial) sum += x * x * h;
    CHECK(std::abs(sum - 1.0) <= 1e-12);
    CHECK(std::abs(s.radial.back()) < 1e-8 * max_abs(s.radial));
    CHECK(residual_norm(op, s.radial, s.energy) <= 1e-8 * max_abs(op.diagonal));
    const auto first = std::find_if(s.radial.begin(), s.radial.end(),
                                    [&](double x) { return std::abs(x) > 1e-8 * max_abs(s.radial); });
    CHECK(*first > 0.0);
  }
  CHECK(states[0].quantum.l_alpha == 5);
  CHECK(states[0].quantum.l == 3);
}

TEST_CASE("inverse iteration reports its convergence") {
  const auto op = discretize(1, coarse.grid);
  const double e = eigenvalue(op, 1, 1e-12);
  InverseIterationReport report;
  const auto v = eigenvector(op, e, 50, &report);
  CHECK(report.steps >= 1);
  CHECK(report.steps <= 10);
  CHECK(report.misalignment < 1e-14);
  CHECK(count_sign_changes(v) == 1);

  // Start far from the eigenvalue and allow one step only.
  CHECK_THROWS_AS(eigenvector(op, 0.5 * (e + eigenvalue(op, 2, 1e-12)), 1), ConvergenceError);
}

TEST_CASE("second-order eigenvalue convergence") {
  for (int la : {1, 2}) {
    std::vector<double> e;
    for (std::size_t n : {2500u, 5000u, 10000u})
      e.push_back(eigenvalue(discretize(la, RadialGrid::cell_centered(50.0, n)), 0, 1e-13));
    const double ratio = convergence_ratio(e[0], e[1], e[2]);
    CAPTURE(la);
    CHECK(ratio >= 3.5);
    CHECK(ratio <= 4.5);
  }
}

TEST_CASE("selection rule violations name the nearest allowed l") {
  try {
    solve_state(make_alpha(3, 5), 4, 1);
    FAIL("expected SelectionRuleError");
  } catch (const SelectionRuleError &e) {
    const std::string msg = e.what();
    CHECK(msg.find("3 6") != std::string::npos);
  }
  CHECK_THROWS_AS(solve_state(make_alpha(1, 1), 0, 0), DomainError);
}

TEST_CASE("repeat solves are bit-identical") {
  const auto a = solve_state(make_alpha(7, 8), 7, 2, coarse);
  const auto b = solve_state(make_alpha(7, 8), 7, 2, coarse);
  CHECK(a.energy == b.energy);
  CHECK(a.radial == b.radial);
}

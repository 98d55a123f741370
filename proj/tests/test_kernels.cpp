#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "conehydro/fdm.hpp"
#include "conehydro/kernels.hpp"

using namespace conehydro;
namespace k = conehydro::kernels;

namespace {

struct Tridiag {
  std::vector<double> diag, off, off_sq;
};

Tridiag random_tridiag(std::size_t n, std::mt19937 &rng) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  Tridiag t;
  for (std::size_t i = 0; i < n; ++i) t.diag.push_back(u(rng));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    t.off.push_back(u(rng));
    t.off_sq.push_back(t.off.back() * t.off.back());
  }
  return t;
}

std::vector<double> random_vector(std::size_t n, std::mt19937 &rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto &x : v) x = u(rng);
  return v;
}

} // namespace

TEST_CASE("environment override selects the variant") {
  if (const char *env = std::getenv("CONEHYDRO_SIMD"); env && std::string(env) == "scalar")
    CHECK(k::active_isa() == k::Isa::Scalar);
  CHECK(k::isa_supported(k::Isa::Scalar));
  MESSAGE("active SIMD variant: ", k::isa_name(k::active_isa()));
}

TEST_CASE("scalar Sturm batch equals four single counts") {
  std::mt19937 rng(7);
  for (std::size_t n : {1u, 2u, 3u, 5u, 64u, 1001u}) {
    const auto t = random_tridiag(n, rng);
    const k::ShiftBatch shifts{-2.0, -0.1, 0.7, 4.0};
    const auto batch = k::scalar::sturm_count4(t.diag, t.off_sq, shifts, 1e-300);
    for (int j = 0; j < 4; ++j) CHECK(batch[j] == k::scalar::sturm_count(t.diag, t.off_sq, shifts[j], 1e-300));
  }
}

#if defined(CONEHYDRO_HAVE_AVX2_KERNELS)

TEST_CASE("AVX2 and scalar variants agree") {
  if (!k::isa_supported(k::Isa::Avx2)) {
    MESSAGE("CPU lacks AVX2; equivalence not exercised");
    return;
  }
  std::mt19937 rng(2024);

  SUBCASE("Sturm counts are identical") {
    for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 100u, 20000u}) {
      const auto t = random_tridiag(n, rng);
      std::uniform_real_distribution<double> s(-6.0, 6.0);
      for (int rep = 0; rep < 25; ++rep) {
        const k::ShiftBatch shifts{s(rng), s(rng), s(rng), s(rng)};
        REQUIRE(k::scalar::sturm_count4(t.diag, t.off_sq, shifts, 1e-300) ==
                k::avx2::sturm_count4(t.diag, t.off_sq, shifts, 1e-300));
      }
    }
  }

  SUBCASE("Sturm counts on the solver operator, shifts at eigenvalues") {
    const auto op = discretize(2, RadialGrid::cell_centered(50.0, 4000));
    std::vector<double> off_sq;
    for (double e : op.off_diagonal) off_sq.push_back(e * e);
    const auto ev = lowest_eigenvalues(op, 4, 1e-13);
    const k::ShiftBatch shifts{ev[0], ev[1], ev[2], ev[3]};
    CHECK(k::scalar::sturm_count4(op.diagonal, off_sq, shifts, 1e-300) ==
          k::avx2::sturm_count4(op.diagonal, off_sq, shifts, 1e-300));
  }

  SUBCASE("tridiagonal products are bit-identical") {
    for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 6u, 7u, 17u, 1000u, 20001u}) {
      const auto t = random_tridiag(n, rng);
      const auto x = random_vector(n, rng);
      std::vector<double> ys(n), ya(n);
      k::scalar::tridiag_apply(t.diag, t.off, x, ys);
      k::avx2::tridiag_apply(t.diag, t.off, x, ya);
      REQUIRE(ys == ya);
    }
  }

  SUBCASE("reductions agree to rounding") {
    for (std::size_t n : {1u, 3u, 4u, 5u, 31u, 1000u, 20000u}) {
      const auto x = random_vector(n, rng);
      const auto y = random_vector(n, rng);
      const auto w = random_vector(n, rng);
      double abs_sum = 0, wabs_sum = 0;
      for (std::size_t i = 0; i < n; ++i) {
        abs_sum += std::abs(x[i] * y[i]);
        wabs_sum += std::abs(w[i] * x[i] * y[i]);
      }
      CHECK(std::abs(k::scalar::dot(x, y) - k::avx2::dot(x, y)) <= 1e-14 * abs_sum);
      CHECK(std::abs(k::scalar::weighted_dot(w, x, y) - k::avx2::weighted_dot(w, x, y)) <= 1e-14 * wabs_sum);
    }
  }
}

TEST_CASE("solver output is independent of the active variant") {
  if (!k::isa_supported(k::Isa::Avx2)) return;
  const auto saved = k::active_isa();
  const SolverConfig config{RadialGrid::cell_centered(50.0, 8000)};

  k::set_isa(k::Isa::Scalar);
  const auto a = solve_states(make_alpha(3, 4), 3, 3, config);
  k::set_isa(k::Isa::Avx2);
  const auto b = solve_states(make_alpha(3, 4), 3, 3, config);
  k::set_isa(saved);

  for (std::size_t i = 0; i < a.size(); ++i) {
    // Bisection sees identical counts, so eigenvalues are bit-identical.
    CHECK(a[i].energy == b[i].energy);
    double diff = 0;
    for (std::size_t j = 0; j < a[i].radial.size(); ++j)
      diff = std::max(diff, std::abs(a[i].radial[j] - b[i].radial[j]));
    CHECK(diff < 1e-10);
  }
}

#endif

TEST_CASE("dispatched kernels match the scalar reference") {
  std::mt19937 rng(99);
  const auto t = random_tridiag(777, rng);
  const auto x = random_vector(777, rng);
  std::vector<double> yd(777), ys(777);
  k::tridiag_apply(t.diag, t.off, x, yd);
  k::scalar::tridiag_apply(t.diag, t.off, x, ys);
  CHECK(yd == ys);
  const k::ShiftBatch shifts{-1, 0, 1, 2};
  CHECK(k::sturm_count4(t.diag, t.off_sq, shifts, 1e-300) == k::scalar::sturm_count4(t.diag, t.off_sq, shifts, 1e-300));
}

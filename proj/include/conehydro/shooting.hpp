#pragma once

// Verification path for the radial eigenproblem that shares no code with the
// finite-difference solver: Numerov integration of the radial equation in
// x = ln r, where it reads
//   f''(x) = [l_alpha^2 + e^{2x} (x - E)] f(x),   R = sqrt(r) f,
// with eigenvalues located by node counting and bisection on E.

#include <cstddef>
#include <vector>

#include "conehydro/core.hpp"

namespace conehydro::shooting {

/// Uniform grid in x = ln r.
class LogGrid {
public:
  LogGrid(double r_inner, double r_outer, std::size_t n_points);

  /// Same outer edge as the Dirichlet node of `grid`, step close to `step`.
  static LogGrid covering(const RadialGrid &grid, double step = default_step, double r_inner = default_inner);

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  double step() const { return step_; }
  std::size_t size() const { return n_; }
  double x(std::size_t i) const { return x_min_ + static_cast<double>(i) * step_; }
  double r_outer() const;
  LogGrid refined(std::size_t factor) const;

  static constexpr double default_step = 5e-4;
  static constexpr double default_inner = 1e-6;

private:
  double x_min_;
  double x_max_;
  std::size_t n_;
  double step_;
};

struct NumerovSolution {
  std::vector<double> r;
  std::vector<double> radial; // R = sqrt(r) f, unnormalized
  /// Sign changes over (r_inner, r_outer], the outer node included.
  int nodes = 0;
};

/// Outward integration started on the regular branch f ~ r^|l_alpha|
/// (R ~ r^{|l_alpha| + 1/2}); renormalized whenever |f| exceeds 1e150.
NumerovSolution numerov_integrate(int l_alpha, double energy, const LogGrid &grid);

/// Node count only (no storage); the function bisected by shoot_eigenvalue.
int count_nodes(int l_alpha, double energy, const LogGrid &grid);

/// n-th eigenvalue (n >= 1) with f(r_outer) = 0, bracketed to width <= tol.
/// Starts from [V_min, V_min + 50] and widens geometrically; throws
/// ConvergenceError if no bracket is found.
double shoot_eigenvalue(int l_alpha, int n, const LogGrid &grid, double tol = 1e-12);

} // namespace conehydro::shooting

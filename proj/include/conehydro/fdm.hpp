#pragma once

#include <span>
#include <utility>
#include <vector>

#include "conehydro/core.hpp"

namespace conehydro {

/// Symmetric tridiagonal discretization of -R'' + V_eff R with Dirichlet
/// R = 0 on the ghost nodes outside both ends of the grid.
struct TridiagonalOperator {
  std::vector<double> diagonal;
  std::vector<double> off_diagonal; // size n-1, both sides
  RadialGrid grid;
  int l_alpha = 0;
  Stencil stencil = Stencil::Cylindrical;

  std::size_t size() const { return diagonal.size(); }
  /// Gershgorin interval enclosing the spectrum.
  std::pair<double, double> gershgorin() const;
  /// Number of eigenvalues strictly below `shift`.
  std::size_t count_below(double shift) const;
  void apply(std::span<const double> x, std::span<double> y) const;
};

TridiagonalOperator discretize(int l_alpha, const RadialGrid &grid, Stencil stencil = Stencil::Cylindrical);

/// The `index`-th smallest eigenvalue (0-based), bracketed to width <= tol
/// by four-way Sturm multisection.
double eigenvalue(const TridiagonalOperator &op, std::size_t index, double tol);

/// The `count` smallest eigenvalues, ascending.
std::vector<double> lowest_eigenvalues(const TridiagonalOperator &op, std::size_t count, double tol);

struct InverseIterationReport {
  int steps = 0;
  double misalignment = 1.0; // 1 - |<v_k, v_k+1>| at exit
};

/// Eigenvector for a converged eigenvalue by inverse iteration (partial-pivot
/// tridiagonal LU). Normalized to sum_i v_i^2 h = 1; the first component above
/// 1e-8 max|v| is positive. Throws ConvergenceError after `max_steps`.
std::vector<double> eigenvector(const TridiagonalOperator &op, double eigenvalue, int max_steps,
                                InverseIterationReport *report = nullptr);

/// Bound state R(r) on the grid; sum_i R_i^2 h = 1.
struct EigenState {
  QuantumNumbers quantum;
  RationalAlpha alpha{1, 1};
  double energy = 0.0;
  std::vector<double> radial;
  RadialGrid grid = default_grid();
};

/// Throws SelectionRuleError when l is not a multiple of p.
EigenState solve_state(const RationalAlpha &alpha, int l, int n, const SolverConfig &config = {});

/// States n = 1..n_max sharing one operator.
std::vector<EigenState> solve_states(const RationalAlpha &alpha, int l, int n_max,
                                     const SolverConfig &config = {});

/// Interior sign changes of v, ignoring entries below rel_threshold * max|v|.
int count_sign_changes(std::span<const double> v, double rel_threshold = 1e-10);

/// ||T v - E v|| / ||v||
double residual_norm(const TridiagonalOperator &op, std::span<const double> v, double eigenvalue);

} // namespace conehydro

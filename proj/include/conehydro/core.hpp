#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace conehydro {

/// Topological factor alpha = p/q of the conical background, in lowest terms.
///
/// Values in (1/2, 1] are the studied window; alpha <= 1/2 (supermassive
/// string) is constructible but flagged by is_supermassive().
class RationalAlpha {
public:
  /// Reduces p/q; throws DomainError unless 1 <= p <= q.
  RationalAlpha(std::int64_t p, std::int64_t q);

  std::int64_t p() const { return p_; }
  std::int64_t q() const { return q_; }
  double value() const { return static_cast<double>(p_) / static_cast<double>(q_); }
  bool is_euclidean() const { return p_ == q_; }
  bool is_supermassive() const { return 2 * p_ <= q_; }

  /// "p/q"; the Euclidean case prints as "1".
  std::string str() const;

  /// Parses "p/q" or a bare integer "1".
  static RationalAlpha parse(const std::string &text);

  friend bool operator==(const RationalAlpha &, const RationalAlpha &) = default;
  friend bool operator<(const RationalAlpha &a, const RationalAlpha &b) {
    return a.p_ * b.q_ < b.p_ * a.q_;
  }

private:
  std::int64_t p_;
  std::int64_t q_;
};

RationalAlpha make_alpha(std::int64_t p, std::int64_t q);

struct QuantumNumbers {
  int n = 1;       // radial, n >= 1
  int l = 0;       // bare angular number
  int l_alpha = 0; // effective angular number, l * q / p

  friend bool operator==(const QuantumNumbers &, const QuantumNumbers &) = default;
};

/// Uniform grid over the dimensionless radius, nodes r_i = r_min + i h.
class RadialGrid {
public:
  RadialGrid(double r_min, double r_max, std::size_t n_points);

  /// Nodes at (i + 1/2) h for i = 0..n-1 with h = box_radius / n_points.
  static RadialGrid cell_centered(double box_radius, std::size_t n_points);

  /// Nodes at i h for i = 1..n with h = box_radius / n_points (ghost node at the origin).
  static RadialGrid vertex(double box_radius, std::size_t n_points);

  double r_min() const { return r_min_; }
  double r_max() const { return r_max_; }
  std::size_t size() const { return n_; }
  double spacing() const { return h_; }
  double node(std::size_t i) const;
  std::vector<double> nodes() const;

  /// True when the first flux face r_min - h/2 sits on the origin.
  bool is_cell_centered() const;

  /// Position of the Dirichlet ghost node beyond the last interior node.
  double outer_boundary() const { return r_max_ + h_; }

  /// Same box, spacing divided by `factor` (cell-centred grids only).
  RadialGrid refined(std::size_t factor) const;

private:
  double r_min_;
  double r_max_;
  std::size_t n_;
  double h_;
};

namespace defaults {
inline constexpr double box_radius = 50.0;
inline constexpr std::size_t grid_points = 20000;
inline constexpr double eigenvalue_tolerance = 1e-11;
inline constexpr int max_states = 5;
inline constexpr int inverse_iteration_max_steps = 50;
inline constexpr int eigenvector_alignment_exponent = -14; // 1 - |<v_k, v_k+1>| < 1e-14
} // namespace defaults

/// Box radius 50, 20000 cell-centred nodes, h = 0.0025.
RadialGrid default_grid();

enum class Stencil {
  /// Symmetrised finite-volume form of -(1/r)(r f')' + (l^2/r^2) f in R = sqrt(r) f.
  Cylindrical,
  /// Plain (-R_{i-1} + 2R_i - R_{i+1})/h^2 with (l^2 - 1/4)/r^2 in the potential.
  Central,
};

struct SolverConfig {
  RadialGrid grid = default_grid();
  double eigenvalue_tolerance = defaults::eigenvalue_tolerance;
  int max_states = defaults::max_states;
  int inverse_iteration_max_steps = defaults::inverse_iteration_max_steps;
  Stencil stencil = Stencil::Cylindrical;

  /// Throws DomainError on nonpositive tolerance or max_states < 1.
  void validate() const;
};

} // namespace conehydro

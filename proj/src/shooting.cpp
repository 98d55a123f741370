#include "conehydro/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "conehydro/error.hpp"

namespace conehydro::shooting {

LogGrid::LogGrid(double r_inner, double r_outer, std::size_t n_points)
    : x_min_(0.0), x_max_(0.0), n_(n_points), step_(0.0) {
  if (!(r_inner > 0.0) || !(r_outer > r_inner)) throw DomainError("log grid needs 0 < r_inner < r_outer");
  if (n_points < 4) throw DomainError("log grid needs at least 4 points");
  x_min_ = std::log(r_inner);
  x_max_ = std::log(r_outer);
  step_ = (x_max_ - x_min_) / static_cast<double>(n_points - 1);
}

LogGrid LogGrid::covering(const RadialGrid &grid, double step, double r_inner) {
  if (!(step > 0.0)) throw DomainError("log grid step must be positive");
  const double r_outer = grid.outer_boundary();
  const double span = std::log(r_outer) - std::log(r_inner);
  const auto n = static_cast<std::size_t>(std::ceil(span / step)) + 1;
  return LogGrid(r_inner, r_outer, n);
}

double LogGrid::r_outer() const { return std::exp(x_max_); }

LogGrid LogGrid::refined(std::size_t factor) const {
  return LogGrid(std::exp(x_min_), std::exp(x_max_), (n_ - 1) * factor + 1);
}

namespace {

constexpr double overflow_guard = 1e150;

// Numerov for f'' = g f: f_{i+1} (1 - s g_{i+1}) = 2 f_i (1 + 5 s g_i) - f_{i-1} (1 - s g_{i-1}), s = h^2/12.
template <class Visit>
void integrate(int l_alpha, double energy, const LogGrid &grid, Visit &&visit) {
  const double l2 = static_cast<double>(l_alpha) * l_alpha;
  const double l_abs = std::abs(l_alpha);
  const double h = grid.step();
  const double s = h * h / 12.0;
  auto g = [&](double x) { return l2 + std::exp(2.0 * x) * (x - energy); };

  double x_prev = grid.x(0);
  double x_cur = grid.x(1);
  double f_prev = 1.0;
  double f_cur = std::exp(l_abs * h);
  double g_prev = g(x_prev);
  double g_cur = g(x_cur);
  visit(0, f_prev, 1.0);
  visit(1, f_cur, 1.0);
  for (std::size_t i = 2; i < grid.size(); ++i) {
    const double x_next = grid.x(i);
    const double g_next = g(x_next);
    const double f_next = (2.0 * f_cur * (1.0 + 5.0 * s * g_cur) - f_prev * (1.0 - s * g_prev)) / (1.0 - s * g_next);
    f_prev = f_cur;
    f_cur = f_next;
    g_prev = g_cur;
    g_cur = g_next;
    double rescale = 1.0;
    if (std::fabs(f_cur) > overflow_guard) {
      rescale = 1.0 / overflow_guard;
      f_prev *= rescale;
      f_cur *= rescale;
    }
    visit(i, f_cur, rescale);
  }
}

} // namespace

NumerovSolution numerov_integrate(int l_alpha, double energy, const LogGrid &grid) {
  NumerovSolution out;
  out.r.resize(grid.size());
  std::vector<double> f(grid.size());
  int last_sign = 0;
  integrate(l_alpha, energy, grid, [&](std::size_t i, double value, double rescale) {
    if (rescale != 1.0)
      for (std::size_t j = 0; j < i; ++j) f[j] *= rescale;
    f[i] = value;
    const int sgn = value > 0.0 ? 1 : (value < 0.0 ? -1 : 0);
    if (sgn != 0) {
      if (last_sign != 0 && sgn != last_sign) ++out.nodes;
      last_sign = sgn;
    }
  });
  out.radial.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out.r[i] = std::exp(grid.x(i));
    out.radial[i] = std::sqrt(out.r[i]) * f[i];
  }
  return out;
}

int count_nodes(int l_alpha, double energy, const LogGrid &grid) {
  int nodes = 0;
  int last_sign = 0;
  integrate(l_alpha, energy, grid, [&](std::size_t, double value, double) {
    const int sgn = value > 0.0 ? 1 : (value < 0.0 ? -1 : 0);
    if (sgn != 0) {
      if (last_sign != 0 && sgn != last_sign) ++nodes;
      last_sign = sgn;
    }
  });
  return nodes;
}

double shoot_eigenvalue(int l_alpha, int n, const LogGrid &grid, double tol) {
  if (n < 1) throw DomainError("radial quantum number n must be >= 1");
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");

  // V_min over the grid of l^2/r^2 + ln r (2D form of the effective potential)
  const double l2 = static_cast<double>(l_alpha) * l_alpha;
  double v_min = INFINITY;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.x(i);
    v_min = std::min(v_min, l2 * std::exp(-2.0 * x) + x);
  }

  double lo = v_min;
  double width = 50.0;
  double hi = lo + width;
  int growth = 0;
  while (count_nodes(l_alpha, hi, grid) < n) {
    if (++growth > 30) {
      std::ostringstream msg;
      msg << "no energy bracket with " << n << " nodes for l_alpha = " << l_alpha << " below " << hi;
      throw ConvergenceError(msg.str());
    }
    lo = hi;
    width *= 2.0;
    hi = lo + width;
  }
  // the recursion only tracks sign changes faithfully while h^2 g / 12 stays
  // well below one; g is largest at the lowest bracket energy
  const double s = grid.step() * grid.step() / 12.0;
  const double x_end = grid.x(grid.size() - 1);
  const double g_max = l2 + std::exp(2.0 * x_end) * std::max(x_end - lo, 0.0);
  if (s * g_max >= 0.5) {
    std::ostringstream msg;
    msg << "log step " << grid.step() << " is too coarse for an outer radius of " << grid.r_outer()
        << " (h^2 g / 12 = " << s * g_max << ")";
    throw DomainError(msg.str());
  }
  if (count_nodes(l_alpha, lo, grid) >= n) throw ConvergenceError("lower energy bracket already has n nodes");

  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (count_nodes(l_alpha, mid, grid) >= n)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

} // namespace conehydro::shooting

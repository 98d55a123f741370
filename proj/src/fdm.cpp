#include "conehydro/fdm.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <sstream>

#include "conehydro/error.hpp"
#include "conehydro/kernels.hpp"
#include "conehydro/selection.hpp"

namespace conehydro {

std::pair<double, double> TridiagonalOperator::gershgorin() const {
  const std::size_t n = size();
  double lo = INFINITY;
  double hi = -INFINITY;
  for (std::size_t i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::fabs(off_diagonal[i - 1]);
    if (i + 1 < n) radius += std::fabs(off_diagonal[i]);
    lo = std::min(lo, diagonal[i] - radius);
    hi = std::max(hi, diagonal[i] + radius);
  }
  const double pad = 4.0 * DBL_EPSILON * std::max(std::fabs(lo), std::fabs(hi)) * static_cast<double>(n);
  return {lo - pad, hi + pad};
}

namespace {

std::vector<double> squared(const std::vector<double> &off) {
  std::vector<double> sq(off.size());
  std::transform(off.begin(), off.end(), sq.begin(), [](double e) { return e * e; });
  return sq;
}

double pivot_floor(const std::vector<double> &off_sq) {
  const double emax = off_sq.empty() ? 0.0 : *std::max_element(off_sq.begin(), off_sq.end());
  return DBL_MIN * std::max(1.0, emax);
}

} // namespace

std::size_t TridiagonalOperator::count_below(double shift) const {
  const auto sq = squared(off_diagonal);
  return kernels::sturm_count4(diagonal, sq, {shift, shift, shift, shift}, pivot_floor(sq))[0];
}

void TridiagonalOperator::apply(std::span<const double> x, std::span<double> y) const {
  kernels::tridiag_apply(diagonal, off_diagonal, x, y);
}

TridiagonalOperator discretize(int l_alpha, const RadialGrid &grid, Stencil stencil) {
  TridiagonalOperator op{{}, {}, grid, l_alpha, stencil};
  const std::size_t n = grid.size();
  const double h = grid.spacing();
  const double inv_h2 = 1.0 / (h * h);
  const double l2 = static_cast<double>(l_alpha) * l_alpha;
  op.diagonal.resize(n);
  op.off_diagonal.resize(n - 1);

  switch (stencil) {
  case Stencil::Central:
    for (std::size_t i = 0; i < n; ++i) {
      const double r = grid.node(i);
      op.diagonal[i] = 2.0 * inv_h2 + (l2 - 0.25) / (r * r) + std::log(r);
    }
    std::fill(op.off_diagonal.begin(), op.off_diagonal.end(), -inv_h2);
    break;
  case Stencil::Cylindrical:
    if (!grid.is_cell_centered())
      throw DomainError("cylindrical stencil needs a cell-centred grid (r_min = h/2)");
    // -(1/r)(r f')' on faces r_{i+1/2}, symmetrised by R_i = sqrt(r_i) f_i;
    // the face at the origin carries no flux.
    for (std::size_t i = 0; i < n; ++i) {
      const double r = grid.node(i);
      op.diagonal[i] = 2.0 * inv_h2 + l2 / (r * r) + std::log(r);
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double r = grid.node(i);
      const double r_next = grid.node(i + 1);
      op.off_diagonal[i] = -(r + 0.5 * h) / std::sqrt(r * r_next) * inv_h2;
    }
    break;
  }
  return op;
}

double eigenvalue(const TridiagonalOperator &op, std::size_t index, double tol) {
  if (!(tol > 0.0)) throw DomainError("eigenvalue tolerance must be positive");
  const std::size_t n = op.size();
  if (index >= n) throw DomainError("eigenvalue index exceeds operator size");

  const auto sq = squared(op.off_diagonal);
  const double pivmin = pivot_floor(sq);
  auto [lo, hi] = op.gershgorin();
  {
    const auto c = kernels::sturm_count4(op.diagonal, sq, {lo, lo, hi, hi}, pivmin);
    if (c[0] != 0 || c[2] != n) {
      std::ostringstream msg;
      msg << "Gershgorin interval [" << lo << ", " << hi << "] does not bracket the spectrum (counts "
          << c[0] << ", " << c[2] << " of " << n << ")";
      throw ConvergenceError(msg.str());
    }
  }

  // invariant: count(lo) <= index < count(hi)
  while (hi - lo > tol) {
    const double step = (hi - lo) / 5.0;
    const kernels::ShiftBatch shifts{lo + step, lo + 2.0 * step, lo + 3.0 * step, lo + 4.0 * step};
    const auto counts = kernels::sturm_count4(op.diagonal, sq, shifts, pivmin);
    double new_lo = lo;
    double new_hi = hi;
    for (std::size_t j = 0; j < 4; ++j) {
      if (counts[j] <= index) new_lo = shifts[j];
      else {
        new_hi = shifts[j];
        break;
      }
    }
    if (new_lo == lo && new_hi == hi) break; // interval at floating-point resolution
    lo = new_lo;
    hi = new_hi;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> lowest_eigenvalues(const TridiagonalOperator &op, std::size_t count, double tol) {
  if (count < 1) throw DomainError("need at least one eigenvalue");
  std::vector<double> values(count);
  for (std::size_t k = 0; k < count; ++k) values[k] = eigenvalue(op, k, tol);
  return values;
}

namespace {

// Partial-pivot LU of a shifted tridiagonal matrix (dgttrf layout).
struct TridiagonalLU {
  std::vector<double> dl, d, du, du2;
  std::vector<char> swapped;

  TridiagonalLU(const TridiagonalOperator &op, double shift) {
    const std::size_t n = op.size();
    dl = op.off_diagonal;
    du = op.off_diagonal;
    d.resize(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = op.diagonal[i] - shift;
    du2.assign(n > 2 ? n - 2 : 0, 0.0);
    swapped.assign(n > 1 ? n - 1 : 0, 0);

    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::fabs(op.diagonal[i]));
    const double tiny = DBL_EPSILON * std::max(scale, 1.0);

    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (std::fabs(d[i]) >= std::fabs(dl[i])) {
        if (d[i] == 0.0) d[i] = tiny;
        const double fact = dl[i] / d[i];
        dl[i] = fact;
        d[i + 1] -= fact * du[i];
      } else {
        const double fact = d[i] / dl[i];
        d[i] = dl[i];
        dl[i] = fact;
        const double temp = du[i];
        du[i] = d[i + 1];
        d[i + 1] = temp - fact * d[i + 1];
        if (i + 2 < n) {
          du2[i] = du[i + 1];
          du[i + 1] = -fact * du[i + 1];
        }
        swapped[i] = 1;
      }
    }
    if (d[n - 1] == 0.0) d[n - 1] = tiny;
    for (auto &x : d)
      if (std::fabs(x) < tiny) x = std::copysign(tiny, x);
  }

  void solve(std::vector<double> &b) const {
    const std::size_t n = d.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (!swapped[i]) {
        b[i + 1] -= dl[i] * b[i];
      } else {
        const double temp = b[i];
        b[i] = b[i + 1];
        b[i + 1] = temp - dl[i] * b[i];
      }
    }
    b[n - 1] /= d[n - 1];
    if (n > 1) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
    for (std::size_t k = n - 2; k-- > 0;) b[k] = (b[k] - du[k] * b[k + 1] - du2[k] * b[k + 2]) / d[k];
  }
};

void normalize_unit(std::vector<double> &v) {
  const double norm = std::sqrt(kernels::dot(v, v));
  for (auto &x : v) x /= norm;
}

} // namespace

std::vector<double> eigenvector(const TridiagonalOperator &op, double eigenvalue, int max_steps,
                                InverseIterationReport *report) {
  const std::size_t n = op.size();
  const TridiagonalLU lu(op, eigenvalue);

  // Deterministic start with overlap on every eigenvector.
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + 0.5 * std::sin(0.7 * static_cast<double>(i) + 0.3);
  normalize_unit(v);

  InverseIterationReport local;
  std::vector<double> w;
  for (int step = 1; step <= max_steps; ++step) {
    w = v;
    lu.solve(w);
    normalize_unit(w);
    local.steps = step;
    local.misalignment = 1.0 - std::fabs(kernels::dot(w, v));
    v.swap(w);
    if (local.misalignment < 1e-14) break;
  }
  if (report) *report = local;
  if (!(local.misalignment < 1e-14)) {
    std::ostringstream msg;
    msg << "inverse iteration did not converge for E = " << eigenvalue << " after " << local.steps
        << " steps (1 - |<v_k, v_k+1>| = " << local.misalignment << ")";
    throw ConvergenceError(msg.str());
  }

  const double h = op.grid.spacing();
  const double scale = 1.0 / std::sqrt(h);
  for (auto &x : v) x *= scale;

  double vmax = 0.0;
  for (double x : v) vmax = std::max(vmax, std::fabs(x));
  const auto first = std::find_if(v.begin(), v.end(), [&](double x) { return std::fabs(x) > 1e-8 * vmax; });
  if (first != v.end() && *first < 0.0)
    for (auto &x : v) x = -x;
  return v;
}

namespace {

int checked_l_alpha(const RationalAlpha &alpha, int l) {
  const auto la = effective_angular(alpha, l);
  if (!la) {
    std::ostringstream msg;
    msg << "l = " << l << " is not allowed for alpha = " << alpha.str() << " (l must be a multiple of "
        << alpha.p() << "); nearest allowed l:";
    for (int v : nearest_allowed_l(alpha, l)) msg << ' ' << v;
    throw SelectionRuleError(msg.str());
  }
  return *la;
}

EigenState make_state(const TridiagonalOperator &op, const RationalAlpha &alpha, int l, int n,
                      double energy, const SolverConfig &config) {
  EigenState s;
  s.quantum = {n, l, op.l_alpha};
  s.alpha = alpha;
  s.energy = energy;
  s.radial = eigenvector(op, energy, config.inverse_iteration_max_steps);
  s.grid = op.grid;
  return s;
}

} // namespace

EigenState solve_state(const RationalAlpha &alpha, int l, int n, const SolverConfig &config) {
  config.validate();
  if (n < 1) throw DomainError("radial quantum number n must be >= 1");
  const int l_alpha = checked_l_alpha(alpha, l);
  const auto op = discretize(l_alpha, config.grid, config.stencil);
  const double e = eigenvalue(op, static_cast<std::size_t>(n - 1), config.eigenvalue_tolerance);
  return make_state(op, alpha, l, n, e, config);
}

std::vector<EigenState> solve_states(const RationalAlpha &alpha, int l, int n_max, const SolverConfig &config) {
  config.validate();
  if (n_max < 1) throw DomainError("n_max must be >= 1");
  const int l_alpha = checked_l_alpha(alpha, l);
  const auto op = discretize(l_alpha, config.grid, config.stencil);
  const auto energies = lowest_eigenvalues(op, static_cast<std::size_t>(n_max), config.eigenvalue_tolerance);
  std::vector<EigenState> states;
  states.reserve(energies.size());
  for (int n = 1; n <= n_max; ++n)
    states.push_back(make_state(op, alpha, l, n, energies[static_cast<std::size_t>(n - 1)], config));
  return states;
}

int count_sign_changes(std::span<const double> v, double rel_threshold) {
  double vmax = 0.0;
  for (double x : v) vmax = std::max(vmax, std::fabs(x));
  const double floor = rel_threshold * vmax;
  int changes = 0;
  int last_sign = 0;
  for (double x : v) {
    if (std::fabs(x) <= floor) continue;
    const int s = x > 0.0 ? 1 : -1;
    if (last_sign != 0 && s != last_sign) ++changes;
    last_sign = s;
  }
  return changes;
}

double residual_norm(const TridiagonalOperator &op, std::span<const double> v, double eigenvalue) {
  std::vector<double> tv(v.size());
  op.apply(v, tv);
  for (std::size_t i = 0; i < v.size(); ++i) tv[i] -= eigenvalue * v[i];
  return std::sqrt(kernels::dot(tv, tv) / kernels::dot(v, v));
}

} // namespace conehydro

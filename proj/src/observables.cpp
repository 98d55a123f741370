#include "conehydro/observables.hpp"

#include <algorithm>
#include <cmath>

#include "conehydro/constants.hpp"
#include "conehydro/error.hpp"
#include "conehydro/kernels.hpp"
#include "conehydro/potentials.hpp"

namespace conehydro {

std::size_t ProbabilityProfile::peak_index() const {
  return static_cast<std::size_t>(std::max_element(density.begin(), density.end()) - density.begin());
}

std::vector<std::size_t> ProbabilityProfile::local_maxima(double rel_threshold) const {
  std::vector<std::size_t> out;
  const double floor = rel_threshold * peak_height();
  const std::size_t n = density.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double left = i > 0 ? density[i - 1] : 0.0;
    const double right = i + 1 < n ? density[i + 1] : 0.0;
    if (density[i] > floor && density[i] > left && density[i] >= right) out.push_back(i);
  }
  return out;
}

double ProbabilityProfile::integral() const {
  double s = 0.0;
  for (double d : density) s += d;
  return s * spacing;
}

double norm(const EigenState &state) { return kernels::dot(state.radial, state.radial) * state.grid.spacing(); }

namespace {

void require_normalized(const EigenState &state) {
  const double n = norm(state);
  if (std::fabs(n - 1.0) > 1e-10)
    throw DomainError("state is not normalized (sum R^2 h = " + std::to_string(n) + ")");
}

} // namespace

double expectation_r_power(const EigenState &state, int power) {
  if (power < 0 || power > 3) throw DomainError("expectation_r_power supports powers 0..3");
  require_normalized(state);
  if (power == 0) return 1.0;
  auto weights = state.grid.nodes();
  if (power >= 2)
    for (auto &w : weights) w = std::pow(w, power);
  return kernels::weighted_dot(weights, state.radial, state.radial) * state.grid.spacing();
}

double expectation_r_power_midpoint(const EigenState &state, int power) {
  require_normalized(state);
  const auto &R = state.radial;
  const double h = state.grid.spacing();
  // intervals between consecutive nodes plus the two end intervals to the
  // zero boundary values (origin side only for vertex grids)
  double s = 0.0;
  // interior midpoints use four-point cubic interpolation, one-sided
  // quadratic at the first and last interval
  const std::size_t n = R.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double rm = state.grid.node(i) + 0.5 * h;
    double Rm;
    if (n < 4)
      Rm = 0.5 * (R[i] + R[i + 1]);
    else if (i == 0)
      Rm = (3.0 * R[0] + 6.0 * R[1] - R[2]) / 8.0;
    else if (i + 2 == n)
      Rm = (3.0 * R[n - 1] + 6.0 * R[n - 2] - R[n - 3]) / 8.0;
    else
      Rm = (9.0 * (R[i] + R[i + 1]) - R[i - 1] - R[i + 2]) / 16.0;
    s += std::pow(rm, power) * Rm * Rm;
  }
  {
    const double r0 = state.grid.node(0);
    const double left = std::max(r0 - h, 0.0);
    const double rm = 0.5 * (left + r0);
    const double Rm = 0.5 * R.front();
    s += std::pow(rm, power) * Rm * Rm * ((r0 - left) / h);
  }
  {
    const double rm = state.grid.r_max() + 0.5 * h;
    const double Rm = 0.5 * R.back();
    s += std::pow(rm, power) * Rm * Rm;
  }
  return s * h;
}

double expectation_log_r(const EigenState &state) {
  require_normalized(state);
  auto weights = state.grid.nodes();
  for (auto &w : weights) w = std::log(w);
  return kernels::weighted_dot(weights, state.radial, state.radial) * state.grid.spacing();
}

VirialCheck virial_check(const EigenState &state) {
  require_normalized(state);
  const int la = state.quantum.l_alpha;
  const std::size_t n = state.radial.size();
  std::vector<double> v(n), r_dv(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = state.grid.node(i);
    v[i] = effective_potential(r, la);
    r_dv[i] = r * effective_potential_derivative(r, la);
  }
  const double h = state.grid.spacing();
  VirialCheck out;
  out.twice_kinetic = 2.0 * (state.energy - kernels::weighted_dot(v, state.radial, state.radial) * h);
  out.r_dv_dr = kernels::weighted_dot(r_dv, state.radial, state.radial) * h;
  return out;
}

ProbabilityProfile probability_profile(const EigenState &state) {
  require_normalized(state);
  ProbabilityProfile p;
  p.quantum = state.quantum;
  p.alpha = state.alpha;
  p.r = state.grid.nodes();
  p.spacing = state.grid.spacing();
  p.density.resize(state.radial.size());
  std::transform(state.radial.begin(), state.radial.end(), p.density.begin(), [](double x) { return x * x; });
  return p;
}

double interpolate_radial(const EigenState &state, double r) {
  const auto &g = state.grid;
  const double h = g.spacing();
  if (r <= 0.0 || r >= g.outer_boundary()) return 0.0;
  if (r < g.r_min()) return state.radial.front() * r / g.r_min();
  const double t = (r - g.r_min()) / h;
  const auto i = static_cast<std::size_t>(t);
  if (i + 1 >= g.size()) {
    const double frac = (r - g.r_max()) / h;
    return state.radial.back() * (1.0 - frac);
  }
  const double frac = t - static_cast<double>(i);
  return state.radial[i] * (1.0 - frac) + state.radial[i + 1] * frac;
}

namespace {

double density_at(const EigenState &state, double r) {
  if (r <= 0.0) r = 0.5 * state.grid.r_min();
  const double R = interpolate_radial(state, r);
  return R * R / (2.0 * constants::pi * state.alpha.value() * r);
}

double containing_radius(const EigenState &state, double tail) {
  const double h = state.grid.spacing();
  double acc = 0.0;
  for (std::size_t i = 0; i < state.radial.size(); ++i) {
    acc += state.radial[i] * state.radial[i] * h;
    if (acc >= 1.0 - tail) return state.grid.node(i);
  }
  return state.grid.r_max();
}

} // namespace

int DiskRaster::ring_count(double rel_threshold) const {
  const std::size_t row = resolution / 2;
  std::vector<double> ray;
  for (std::size_t i = 0; i < resolution; ++i)
    if (x[i] >= 0.0) ray.push_back(at(i, row));
  const double peak = ray.empty() ? 0.0 : *std::max_element(ray.begin(), ray.end());
  int rings = 0;
  for (std::size_t i = 0; i < ray.size(); ++i) {
    const double left = i > 0 ? ray[i - 1] : 0.0;
    const double right = i + 1 < ray.size() ? ray[i + 1] : 0.0;
    if (ray[i] > rel_threshold * peak && ray[i] > left && ray[i] >= right) ++rings;
  }
  return rings;
}

DiskRaster disk_density(const EigenState &state, std::size_t resolution, double extent) {
  if (resolution < 16) throw DomainError("disk raster resolution must be >= 16");
  require_normalized(state);
  DiskRaster d;
  d.resolution = resolution;
  d.extent = extent > 0.0 ? extent : containing_radius(state, 1e-6);
  d.x.resize(resolution);
  // x_{n-1-i} = -x_i exactly, so the raster is mirror symmetric bit for bit
  const double last = static_cast<double>(resolution - 1);
  for (std::size_t i = 0; i < resolution; ++i)
    d.x[i] = d.extent * ((2.0 * static_cast<double>(i) - last) / last);
  d.y = d.x;
  d.density.resize(resolution * resolution);
  for (std::size_t j = 0; j < resolution; ++j)
    for (std::size_t i = 0; i < resolution; ++i)
      d.density[j * resolution + i] = density_at(state, std::hypot(d.x[i], d.y[j]));
  return d;
}

} // namespace conehydro

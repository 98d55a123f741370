#pragma once

#include <vector>

#include "conehydro/fdm.hpp"

namespace conehydro {

/// Radial probability density rho = R^2 (with int rho dr = 1).
struct ProbabilityProfile {
  QuantumNumbers quantum;
  RationalAlpha alpha{1, 1};
  std::vector<double> r;
  std::vector<double> density;
  double spacing = 0.0;

  /// Index of the global maximum.
  std::size_t peak_index() const;
  double peak_radius() const { return r[peak_index()]; }
  double peak_height() const { return density[peak_index()]; }
  /// Local maxima above rel_threshold * peak height, ascending in r.
  std::vector<std::size_t> local_maxima(double rel_threshold = 1e-6) const;
  double integral() const;
};

/// sum_i R_i^2 h; should be 1 for solver output.
double norm(const EigenState &state);

/// <r^power> = sum_i r_i^power R_i^2 h for power in {1, 2} (0 gives the norm).
/// Throws DomainError if the state is not normalized to 1e-10.
double expectation_r_power(const EigenState &state, int power);

/// Same moment with the midpoint rule on linearly interpolated R.
double expectation_r_power_midpoint(const EigenState &state, int power);

/// <ln r>
double expectation_log_r(const EigenState &state);

/// Both sides of the virial identity for -R'' + V_eff R = E R:
/// 2 <T> = 2 (E - <V_eff>) and <r V_eff'(r)>.
struct VirialCheck {
  double twice_kinetic = 0.0;
  double r_dv_dr = 0.0;
};
VirialCheck virial_check(const EigenState &state);

ProbabilityProfile probability_profile(const EigenState &state);

/// |psi(r, theta)|^2 = R(r)^2 / (2 pi alpha r) sampled on a square raster.
struct DiskRaster {
  std::size_t resolution = 0;
  double extent = 0.0;             // raster covers [-extent, extent]^2
  std::vector<double> x, y;        // axis coordinates, size resolution
  std::vector<double> density;     // row-major, density[j * resolution + i] at (x[i], y[j])

  double at(std::size_t i, std::size_t j) const { return density[j * resolution + i]; }
  /// Local maxima of the density along the positive x half-axis through the centre row.
  int ring_count(double rel_threshold = 1e-4) const;
};

/// Raster of side `resolution` (>= 16). `extent` <= 0 picks the radius that
/// holds all but 1e-6 of the probability.
DiskRaster disk_density(const EigenState &state, std::size_t resolution, double extent = 0.0);

/// R(r) by linear interpolation on the state's grid; 0 outside it
/// (and linear to 0 between the origin and the first node).
double interpolate_radial(const EigenState &state, double r);

} // namespace conehydro

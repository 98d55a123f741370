#pragma once

#include <string>
#include <variant>

namespace conehydro {

// Dimensionless models (radius and energy in the solver's reduced units).

/// (l_alpha^2 - 1/4) / r^2 + ln r. Throws DomainError for r <= 0.
double effective_potential(double r, int l_alpha);
/// d/dr of effective_potential: -2 (l_alpha^2 - 1/4) / r^3 + 1/r.
double effective_potential_derivative(double r, int l_alpha);
/// Location of the minimum, sqrt(2 (l_alpha^2 - 1/4)), for |l_alpha| >= 1.
double effective_potential_minimum(int l_alpha);
/// ln r.
double log2d_potential(double r);

// SI models: r and r_s in metres, energies in joules.

/// (e^2 / (4 pi eps0 kappa)) (1/r_s) [ln(r / (2 r_s)) + gamma]
double rk_log_approx(double r, double r_s, double kappa);
/// -e^2 / (4 pi eps0 kappa r)
double coulomb3d(double r, double kappa);
/// -(e^2 / (4 pi eps0 kappa)) (pi / (2 r_s)) [H0(r/r_s) - Y0(r/r_s)]
double rk_full(double r, double r_s, double kappa);

struct Log2D {};
struct Effective {
  int l_alpha = 0;
};
struct Coulomb3D {
  double kappa = 1.0;
};
struct RKLogApprox {
  double r_s = 1e-9;
  double kappa = 1.0;
};
struct RKFull {
  double r_s = 1e-9;
  double kappa = 1.0;
};

using PotentialSpec = std::variant<Log2D, Effective, Coulomb3D, RKLogApprox, RKFull>;

/// Throws DomainError on r_s <= 0 or kappa < 1.
void validate(const PotentialSpec &spec);

/// Dimensionless for Log2D / Effective, joules (r in metres) otherwise.
double evaluate(const PotentialSpec &spec, double r);

bool is_si(const PotentialSpec &spec);
std::string name(const PotentialSpec &spec);

} // namespace conehydro

#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace conehydro {

/// Exciton material entry. Lengths in nm, masses in units of m_e.
struct MaterialParams {
  std::string name;
  std::string substrate;
  double mu_over_me = 0.0;
  double r_s_nm = 0.0;
  double kappa = 1.0;

  /// Throws DomainError unless mu > 0, r_s > 0, kappa >= 1.
  void validate() const;

  /// Same material in a different dielectric environment; kappa * r_s is
  /// kept fixed (r_s = 2 pi alpha_s / kappa with fixed polarizability).
  MaterialParams with_kappa(double kappa_new) const;
};

/// E_alpha = (e^2 / 2 pi eps0) [E + 1/2 ln(2 pi eps0 hbar^2 / (2 m e^2 r0^2))], joules.
/// eps0 and r0 enter with their SI numeric values. Throws DomainError for r0 <= 0.
double hydrogen_energy_si(double e_dimensionless, double r0);

/// sqrt(2 pi eps0 hbar^2 / (2 m e^2)): the r0 for which the logarithm vanishes.
double hydrogen_length_scale();

/// sqrt(4 pi eps0 kappa r_s hbar^2 / (2 mu e^2)), metres.
double dimensionless_length_scale(const MaterialParams &material);

/// E = (e^2 / (4 pi eps0 kappa r_s)) [(E_nl + gamma) + 1/2 ln(4 pi eps0 kappa hbar^2 / (2 mu e^2 4 r_s))], joules.
double exciton_energy_si(double e_dimensionless, const MaterialParams &material);

double joule_to_ev(double joules);

struct SweepPoint {
  double kappa = 1.0;
  int n = 1;
  int l = 0;
  double energy_ev = 0.0;
};

/// Exciton energies for every (kappa, state). `dimensionless_energies[i]`
/// is E_{n,l} for `states[i]` = (n, l).
std::vector<SweepPoint> exciton_sweep(const MaterialParams &material, const std::vector<double> &kappas,
                                      const std::vector<std::pair<int, int>> &states,
                                      const std::vector<double> &dimensionless_energies);

/// Log-spaced kappa values lo..hi inclusive.
std::vector<double> log_spaced(double lo, double hi, int steps);

/// Parses a JSON array of {name, substrate, mu_over_me, r_s_nm, kappa}.
/// Throws SchemaError naming the entry index, its name and source line.
std::vector<MaterialParams> parse_materials(const std::string &json_text);
std::vector<MaterialParams> load_materials(const std::filesystem::path &path);

} // namespace conehydro

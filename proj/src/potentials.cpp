#include "conehydro/potentials.hpp"

#include <cmath>
#include <string>

#include "conehydro/constants.hpp"
#include "conehydro/error.hpp"
#include "conehydro/special_functions.hpp"

namespace conehydro {

namespace {

void require_positive(double v, const char *what) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw DomainError(std::string(what) + " must be positive and finite, got " + std::to_string(v));
}

void require_kappa(double kappa) {
  if (!(kappa >= 1.0) || !std::isfinite(kappa))
    throw DomainError("dielectric constant kappa must be >= 1, got " + std::to_string(kappa));
}

template <class... Ts> struct overloaded : Ts... {
  using Ts::operator()...;
};

} // namespace

double effective_potential(double r, int l_alpha) {
  require_positive(r, "radius");
  const double c = static_cast<double>(l_alpha) * l_alpha - 0.25;
  return c / (r * r) + std::log(r);
}

double effective_potential_derivative(double r, int l_alpha) {
  require_positive(r, "radius");
  const double c = static_cast<double>(l_alpha) * l_alpha - 0.25;
  return -2.0 * c / (r * r * r) + 1.0 / r;
}

double effective_potential_minimum(int l_alpha) {
  if (l_alpha == 0) throw DomainError("l_alpha = 0 effective potential has no interior minimum");
  return std::sqrt(2.0 * (static_cast<double>(l_alpha) * l_alpha - 0.25));
}

double log2d_potential(double r) {
  require_positive(r, "radius");
  return std::log(r);
}

double rk_log_approx(double r, double r_s, double kappa) {
  require_positive(r, "radius");
  require_positive(r_s, "screening length");
  require_kappa(kappa);
  return constants::coulomb_prefactor / kappa / r_s *
         (std::log(r / (2.0 * r_s)) + constants::euler_gamma);
}

double coulomb3d(double r, double kappa) {
  require_positive(r, "radius");
  require_kappa(kappa);
  return -constants::coulomb_prefactor / (kappa * r);
}

double rk_full(double r, double r_s, double kappa) {
  require_positive(r, "radius");
  require_positive(r_s, "screening length");
  require_kappa(kappa);
  return -constants::coulomb_prefactor / kappa * (constants::pi / (2.0 * r_s)) *
         special::struve_h0_minus_y0(r / r_s);
}

void validate(const PotentialSpec &spec) {
  std::visit(overloaded{[](const Log2D &) {}, [](const Effective &) {},
                        [](const Coulomb3D &c) { require_kappa(c.kappa); },
                        [](const RKLogApprox &m) {
                          require_positive(m.r_s, "screening length");
                          require_kappa(m.kappa);
                        },
                        [](const RKFull &m) {
                          require_positive(m.r_s, "screening length");
                          require_kappa(m.kappa);
                        }},
             spec);
}

double evaluate(const PotentialSpec &spec, double r) {
  return std::visit(overloaded{[r](const Log2D &) { return log2d_potential(r); },
                               [r](const Effective &e) { return effective_potential(r, e.l_alpha); },
                               [r](const Coulomb3D &c) { return coulomb3d(r, c.kappa); },
                               [r](const RKLogApprox &m) { return rk_log_approx(r, m.r_s, m.kappa); },
                               [r](const RKFull &m) { return rk_full(r, m.r_s, m.kappa); }},
                    spec);
}

bool is_si(const PotentialSpec &spec) {
  return !std::holds_alternative<Log2D>(spec) && !std::holds_alternative<Effective>(spec);
}

std::string name(const PotentialSpec &spec) {
  return std::visit(overloaded{[](const Log2D &) { return std::string("log2d"); },
                               [](const Effective &e) { return "effective(l_alpha=" + std::to_string(e.l_alpha) + ")"; },
                               [](const Coulomb3D &) { return std::string("coulomb3d"); },
                               [](const RKLogApprox &) { return std::string("rk-log"); },
                               [](const RKFull &) { return std::string("rk"); }},
                    spec);
}

} // namespace conehydro

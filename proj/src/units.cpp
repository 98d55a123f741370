#include "conehydro/units.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "conehydro/constants.hpp"
#include "conehydro/error.hpp"

namespace conehydro {

namespace c = constants;

void MaterialParams::validate() const {
  if (!(mu_over_me > 0.0) || !std::isfinite(mu_over_me)) throw DomainError(name + ": reduced mass must be positive");
  if (!(r_s_nm > 0.0) || !std::isfinite(r_s_nm)) throw DomainError(name + ": screening length must be positive");
  if (!(kappa >= 1.0) || !std::isfinite(kappa)) throw DomainError(name + ": kappa must be >= 1");
}

MaterialParams MaterialParams::with_kappa(double kappa_new) const {
  MaterialParams m = *this;
  m.r_s_nm = r_s_nm * kappa / kappa_new;
  m.kappa = kappa_new;
  m.validate();
  return m;
}

double hydrogen_length_scale() {
  const double e2 = c::elementary_charge * c::elementary_charge;
  return std::sqrt(2.0 * c::pi * c::epsilon0 * c::hbar * c::hbar / (2.0 * c::hydrogen_reduced_mass * e2));
}

double hydrogen_energy_si(double e_dimensionless, double r0) {
  if (!(r0 > 0.0)) throw DomainError("r0 must be positive");
  const double e2 = c::elementary_charge * c::elementary_charge;
  const double prefactor = e2 / (2.0 * c::pi * c::epsilon0);
  const double arg = 2.0 * c::pi * c::epsilon0 * c::hbar * c::hbar /
                     (2.0 * c::hydrogen_reduced_mass * e2 * r0 * r0);
  return prefactor * (e_dimensionless + 0.5 * std::log(arg));
}

double dimensionless_length_scale(const MaterialParams &material) {
  material.validate();
  const double e2 = c::elementary_charge * c::elementary_charge;
  const double mu = material.mu_over_me * c::electron_mass;
  const double r_s = material.r_s_nm * c::nanometre;
  return std::sqrt(4.0 * c::pi * c::epsilon0 * material.kappa * r_s * c::hbar * c::hbar / (2.0 * mu * e2));
}

double exciton_energy_si(double e_dimensionless, const MaterialParams &material) {
  material.validate();
  const double e2 = c::elementary_charge * c::elementary_charge;
  const double mu = material.mu_over_me * c::electron_mass;
  const double r_s = material.r_s_nm * c::nanometre;
  const double prefactor = c::coulomb_prefactor / (material.kappa * r_s);
  const double arg = 4.0 * c::pi * c::epsilon0 * material.kappa * c::hbar * c::hbar / (2.0 * mu * e2 * 4.0 * r_s);
  return prefactor * ((e_dimensionless + c::euler_gamma) + 0.5 * std::log(arg));
}

double joule_to_ev(double joules) { return joules / c::electron_volt; }

std::vector<SweepPoint> exciton_sweep(const MaterialParams &material, const std::vector<double> &kappas,
                                      const std::vector<std::pair<int, int>> &states,
                                      const std::vector<double> &dimensionless_energies) {
  if (states.size() != dimensionless_energies.size())
    throw DomainError("exciton_sweep needs one dimensionless energy per state");
  std::vector<SweepPoint> out;
  out.reserve(kappas.size() * states.size());
  for (double kappa : kappas) {
    const auto m = material.with_kappa(kappa);
    for (std::size_t s = 0; s < states.size(); ++s)
      out.push_back({kappa, states[s].first, states[s].second,
                     joule_to_ev(exciton_energy_si(dimensionless_energies[s], m))});
  }
  return out;
}

std::vector<double> log_spaced(double lo, double hi, int steps) {
  if (!(lo > 0.0) || !(hi >= lo) || steps < 1) throw DomainError("log_spaced needs 0 < lo <= hi and steps >= 1");
  if (steps == 1) return {lo};
  std::vector<double> v(static_cast<std::size_t>(steps));
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int i = 0; i < steps; ++i) v[static_cast<std::size_t>(i)] = std::exp(a + (b - a) * i / (steps - 1));
  v.front() = lo;
  v.back() = hi;
  return v;
}

namespace {

// 1-based source line of each top-level array element.
std::vector<int> element_lines(const std::string &text) {
  std::vector<int> lines;
  int line = 1;
  int depth = 0;
  bool in_string = false;
  bool escaped = false;
  bool expecting = false;
  for (char ch : text) {
    if (ch == '\n') ++line;
    if (in_string) {
      if (escaped) escaped = false;
      else if (ch == '\\') escaped = true;
      else if (ch == '"') in_string = false;
      continue;
    }
    const bool blank = ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n';
    if (depth == 1 && expecting && !blank && ch != ']') {
      lines.push_back(line);
      expecting = false;
    }
    switch (ch) {
    case '"': in_string = true; break;
    case '[':
    case '{':
      ++depth;
      if (depth == 1 && ch == '[') expecting = true;
      break;
    case ']':
    case '}': --depth; break;
    case ',':
      if (depth == 1) expecting = true;
      break;
    default: break;
    }
  }
  return lines;
}

} // namespace

std::vector<MaterialParams> parse_materials(const std::string &json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error &e) {
    throw SchemaError(std::string("material file is not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw SchemaError("material file must hold a JSON array of material objects (line 1)");

  const auto lines = element_lines(json_text);
  std::vector<MaterialParams> out;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto &entry = doc[i];
    const int line = i < lines.size() ? lines[i] : 0;
    std::string label = "entry " + std::to_string(i);
    if (entry.is_object() && entry.contains("name") && entry["name"].is_string())
      label += " ('" + entry["name"].get<std::string>() + "')";
    auto fail = [&](const std::string &why) -> void {
      throw SchemaError("material " + label + " at line " + std::to_string(line) + ": " + why);
    };
    if (!entry.is_object()) fail("expected an object");
    MaterialParams m;
    for (const char *key : {"name", "substrate"}) {
      if (!entry.contains(key)) fail(std::string("missing field '") + key + "'");
      if (!entry[key].is_string()) fail(std::string("field '") + key + "' must be a string");
    }
    for (const char *key : {"mu_over_me", "r_s_nm", "kappa"}) {
      if (!entry.contains(key)) fail(std::string("missing field '") + key + "'");
      if (!entry[key].is_number()) fail(std::string("field '") + key + "' must be a number");
    }
    m.name = entry["name"].get<std::string>();
    m.substrate = entry["substrate"].get<std::string>();
    m.mu_over_me = entry["mu_over_me"].get<double>();
    m.r_s_nm = entry["r_s_nm"].get<double>();
    m.kappa = entry["kappa"].get<double>();
    try {
      m.validate();
    } catch (const DomainError &e) {
      fail(e.what());
    }
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<MaterialParams> load_materials(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open material file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_materials(buf.str());
}

} // namespace conehydro

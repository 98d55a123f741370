#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <future>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "conehydro/constants.hpp"
#include "conehydro/error.hpp"
#include "conehydro/fdm.hpp"
#include "conehydro/observables.hpp"
#include "conehydro/potentials.hpp"
#include "conehydro/selection.hpp"
#include "conehydro/shooting.hpp"
#include "conehydro/units.hpp"

namespace conehydro::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fixed(double v, int digits = 5) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// Shortest text that round-trips; CSV and JSON carry full precision.
std::string full(double v) {
  char buf[64];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

std::string sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

std::string pq(const RationalAlpha &a) { return std::to_string(a.p()) + "/" + std::to_string(a.q()); }

using Row = std::vector<std::string>;

void print_table(std::ostream &out, const Row &header, const std::vector<Row> &rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t j = 0; j < header.size(); ++j) width[j] = header[j].size();
  for (const auto &r : rows)
    for (std::size_t j = 0; j < r.size(); ++j) width[j] = std::max(width[j], r[j].size());
  auto line = [&](const Row &r) {
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (j) out << "  ";
      out << std::string(width[j] - r[j].size(), ' ') << r[j];
    }
    out << '\n';
  };
  line(header);
  for (const auto &r : rows) line(r);
}

void print_csv(std::ostream &out, const Row &header, const std::vector<Row> &rows) {
  auto line = [&](const Row &r) {
    for (std::size_t j = 0; j < r.size(); ++j) out << (j ? "," : "") << r[j];
    out << '\n';
  };
  line(header);
  for (const auto &r : rows) line(r);
}

void print_json(std::ostream &out, const ordered_json &doc) { out << doc.dump(2) << '\n'; }

struct Range {
  double lo = 0.0;
  double hi = 0.0;
  int steps = 0;
};

Range parse_range(const std::string &text, const char *flag) {
  Range r;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%d%c", &r.lo, &r.hi, &r.steps, &tail) != 3 || r.steps < 1 ||
      !(r.hi >= r.lo))
    throw DomainError(std::string(flag) + " expects lo:hi:steps with lo <= hi and steps >= 1, got '" + text + "'");
  return r;
}

std::vector<double> sample(const Range &r, bool log_spacing) {
  if (log_spacing) return log_spaced(r.lo, r.hi, r.steps);
  std::vector<double> v(static_cast<std::size_t>(r.steps));
  for (int i = 0; i < r.steps; ++i)
    v[static_cast<std::size_t>(i)] = r.steps == 1 ? r.lo : r.lo + (r.hi - r.lo) * i / (r.steps - 1);
  return v;
}

Stencil parse_stencil(const std::string &s) { return s == "central" ? Stencil::Central : Stencil::Cylindrical; }

// "r_max,points"
RadialGrid parse_grid(const std::string &text, Stencil stencil) {
  double r_max = 0;
  long points = 0;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%lf,%ld%c", &r_max, &points, &tail) != 2 || !(r_max > 0) || points < 3)
    throw DomainError("--grid expects r_max,points with r_max > 0 and points >= 3, got '" + text + "'");
  const auto n = static_cast<std::size_t>(points);
  return stencil == Stencil::Central ? RadialGrid::vertex(r_max, n) : RadialGrid::cell_centered(r_max, n);
}

RationalAlpha parse_alpha(const std::string &text, std::ostream &err) {
  const auto a = RationalAlpha::parse(text);
  if (a.is_supermassive())
    err << "warning: alpha = " << a.str() << " <= 1/2 lies outside the studied window 1/2 < alpha <= 1\n";
  return a;
}

// "1s,2s,3p" -> (n, l)
std::vector<std::pair<int, int>> parse_states(const std::string &text) {
  static const std::string letters = "spdfgh";
  std::vector<std::pair<int, int>> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    int n = 0;
    char letter = 0, tail = 0;
    const auto l = std::sscanf(item.c_str(), "%d%c%c", &n, &letter, &tail) == 2 ? letters.find(letter)
                                                                                : std::string::npos;
    if (l == std::string::npos || n < 1)
      throw DomainError("--states expects a list like 1s,2s,3s, got '" + item + "'");
    out.emplace_back(n, static_cast<int>(l));
  }
  if (out.empty()) throw DomainError("--states is empty");
  return out;
}

std::string state_label(int n, int l) { return std::to_string(n) + std::string(1, "spdfgh"[l]); }

// ---------------------------------------------------------------- solve

struct SolveOptions {
  std::string alpha = "1/1";
  int l = 0;
  int n_max = 1;
  std::string grid = "50,20000";
  std::string stencil = "cylindrical";
  bool verify = false;
  std::string format = "table";
};

int cmd_solve(const SolveOptions &o, std::ostream &out, std::ostream &err) {
  const auto alpha = parse_alpha(o.alpha, err);
  SolverConfig config;
  config.stencil = parse_stencil(o.stencil);
  config.grid = parse_grid(o.grid, config.stencil);
  config.max_states = std::max(o.n_max, 1);

  const auto states = solve_states(alpha, o.l, o.n_max, config);

  std::vector<double> numerov;
  if (o.verify) {
    const auto lg = shooting::LogGrid::covering(config.grid);
    std::vector<std::future<double>> jobs;
    for (const auto &s : states)
      jobs.push_back(std::async(std::launch::async, [&lg, la = s.quantum.l_alpha, n = s.quantum.n] {
        return shooting::shoot_eigenvalue(la, n, lg);
      }));
    for (auto &j : jobs) numerov.push_back(j.get());
  }

  Row header{"alpha", "l", "l_alpha", "n", "energy", "r_mean", "r2_mean"};
  if (o.verify) {
    header.push_back("numerov_energy");
    header.push_back("delta");
  }

  if (o.format == "json") {
    ordered_json doc = ordered_json::array();
    for (std::size_t i = 0; i < states.size(); ++i) {
      const auto &s = states[i];
      ordered_json row;
      row["alpha"] = pq(alpha);
      row["l"] = s.quantum.l;
      row["l_alpha"] = s.quantum.l_alpha;
      row["n"] = s.quantum.n;
      row["energy"] = s.energy;
      row["r_mean"] = expectation_r_power(s, 1);
      row["r2_mean"] = expectation_r_power(s, 2);
      if (o.verify) {
        row["numerov_energy"] = numerov[i];
        row["delta"] = s.energy - numerov[i];
      }
      doc.push_back(std::move(row));
    }
    print_json(out, doc);
    return exit_ok;
  }

  const bool table = o.format == "table";
  std::vector<Row> rows;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto &s = states[i];
    auto num = [&](double v) { return table ? fixed(v) : full(v); };
    Row r{table ? alpha.str() : pq(alpha), std::to_string(s.quantum.l), std::to_string(s.quantum.l_alpha),
          std::to_string(s.quantum.n), num(s.energy), num(expectation_r_power(s, 1)),
          num(expectation_r_power(s, 2))};
    if (o.verify) {
      r.push_back(num(numerov[i]));
      r.push_back(table ? sci(s.energy - numerov[i]) : full(s.energy - numerov[i]));
    }
    rows.push_back(std::move(r));
  }
  if (table) {
    header = {"alpha", "l", "l_alpha", "n", "E", "<r>", "<r^2>"};
    if (o.verify) {
      header.push_back("E_numerov");
      header.push_back("delta");
    }
    print_table(out, header, rows);
  } else {
    print_csv(out, header, rows);
  }
  return exit_ok;
}

// ---------------------------------------------------------------- rules

struct RulesOptions {
  int l_max = 10;
  std::string alpha;
  bool all_denominators = false;
  std::string format = "table";
};

int cmd_rules(const RulesOptions &o, std::ostream &out, std::ostream &err) {
  if (o.l_max < 0) throw DomainError("--l-max must be >= 0");
  const auto rows = o.alpha.empty()
                        ? rules_table(o.l_max, o.all_denominators ? DenominatorFamily::All
                                                                  : DenominatorFamily::TerminatingDecimal)
                        : rules_table(parse_alpha(o.alpha, err), o.l_max);

  if (o.format == "json") {
    ordered_json doc = ordered_json::array();
    for (const auto &r : rows) {
      ordered_json row;
      row["l"] = r.l;
      row["alpha"] = r.alpha ? pq(*r.alpha) : "all";
      row["l_alpha"] = r.l_alpha;
      doc.push_back(std::move(row));
    }
    print_json(out, doc);
    return exit_ok;
  }
  const bool table = o.format == "table";
  std::vector<Row> body;
  for (const auto &r : rows)
    body.push_back({std::to_string(r.l),
                    r.alpha ? (table ? r.alpha->str() : pq(*r.alpha)) : (table ? "1/2 < alpha <= 1" : "all"),
                    std::to_string(r.l_alpha)});
  (table ? print_table : print_csv)(out, {"l", "alpha", "l_alpha"}, body);
  return exit_ok;
}

// ---------------------------------------------------------------- potential

struct PotentialOptions {
  std::string model;
  std::vector<int> l_alpha{0};
  double r_s_nm = 1.0;
  double kappa = 1.0;
  std::string r_range;
  bool log_spacing = false;
};

int cmd_potential(const PotentialOptions &o, std::ostream &out, std::ostream &) {
  const bool si = o.model != "effective" && o.model != "log2d";
  const auto range = parse_range(o.r_range.empty() ? (si ? "0.05:100:400" : "0.05:20:400") : o.r_range,
                                 "--r-range");
  if (!(range.lo > 0)) throw DomainError("--r-range must start above r = 0");
  const auto rs = sample(range, o.log_spacing);

  std::vector<PotentialSpec> specs;
  Row header{si ? "r_nm" : "r"};
  const double r_s = o.r_s_nm * constants::nanometre;
  if (o.model == "effective") {
    for (int la : o.l_alpha) {
      specs.emplace_back(Effective{la});
      header.push_back("V(l_alpha=" + std::to_string(la) + ")");
    }
  } else if (o.model == "log2d") {
    specs.emplace_back(Log2D{});
    header.push_back("V");
  } else if (o.model == "coulomb3d") {
    specs.emplace_back(Coulomb3D{o.kappa});
  } else if (o.model == "rk") {
    specs.emplace_back(RKFull{r_s, o.kappa});
  } else {
    specs.emplace_back(RKLogApprox{r_s, o.kappa});
  }
  if (si) header.push_back("V_eV");
  for (const auto &s : specs) validate(s);

  std::vector<Row> rows;
  for (double r : rs) {
    Row row{full(r)};
    for (const auto &s : specs) {
      const double v = si ? joule_to_ev(evaluate(s, r * constants::nanometre)) : evaluate(s, r);
      row.push_back(full(v));
    }
    rows.push_back(std::move(row));
  }
  print_csv(out, header, rows);
  return exit_ok;
}

// ---------------------------------------------------------------- exciton

struct ExcitonOptions {
  std::string materials = CONEHYDRO_DEFAULT_MATERIALS;
  std::string sweep_kappa;
  std::string states = "1s";
  std::string material;
  std::string substrate;
  std::string grid = "50,20000";
  std::string format = "table";
};

int cmd_exciton(const ExcitonOptions &o, std::ostream &out, std::ostream &) {
  const auto all = load_materials(o.materials);
  std::vector<MaterialParams> materials;
  for (const auto &m : all)
    if ((o.material.empty() || m.name == o.material) && (o.substrate.empty() || m.substrate == o.substrate))
      materials.push_back(m);
  if (materials.empty()) throw DomainError("no material matches the --material/--substrate filter");

  const auto states = parse_states(o.states);
  SolverConfig config;
  config.grid = parse_grid(o.grid, Stencil::Cylindrical);

  // One operator per l, solved concurrently, read back in order.
  std::map<int, int> n_max;
  for (auto [n, l] : states) n_max[l] = std::max(n_max[l], n);
  std::map<int, std::future<std::vector<EigenState>>> jobs;
  for (auto [l, n] : n_max)
    jobs[l] = std::async(std::launch::async, [l = l, n = n, &config] {
      return solve_states(make_alpha(1, 1), l, n, config);
    });
  std::map<int, std::vector<EigenState>> solved;
  for (auto &[l, j] : jobs) solved[l] = j.get();
  std::vector<double> energies;
  for (auto [n, l] : states) energies.push_back(solved[l][static_cast<std::size_t>(n - 1)].energy);

  const bool table = o.format == "table";
  if (!o.sweep_kappa.empty()) {
    const auto range = parse_range(o.sweep_kappa, "--sweep-kappa");
    if (!(range.lo >= 1.0)) throw DomainError("--sweep-kappa values must be >= 1");
    const auto kappas = log_spaced(range.lo, range.hi, range.steps);
    // Rows for the same material in another dielectric share kappa r_s and
    // would repeat the same curve.
    std::set<std::pair<std::string, std::pair<double, double>>> seen;
    ordered_json doc = ordered_json::array();
    std::vector<Row> rows;
    for (const auto &m : materials) {
      if (!seen.insert({m.name, {m.mu_over_me, m.kappa * m.r_s_nm}}).second) continue;
      for (const auto &p : exciton_sweep(m, kappas, states, energies)) {
        if (o.format == "json") {
          ordered_json row;
          row["name"] = m.name;
          row["kappa"] = p.kappa;
          row["state"] = state_label(p.n, p.l);
          row["energy_ev"] = p.energy_ev;
          doc.push_back(std::move(row));
        } else {
          rows.push_back({m.name, table ? fixed(p.kappa, 4) : full(p.kappa), state_label(p.n, p.l),
                          table ? fixed(p.energy_ev) : full(p.energy_ev)});
        }
      }
    }
    if (o.format == "json") print_json(out, doc);
    else (table ? print_table : print_csv)(out, {"name", "kappa", "state", "energy_ev"}, rows);
    return exit_ok;
  }

  ordered_json doc = ordered_json::array();
  std::vector<Row> rows;
  for (const auto &m : materials) {
    for (std::size_t s = 0; s < states.size(); ++s) {
      const double ev = joule_to_ev(exciton_energy_si(energies[s], m));
      const auto label = state_label(states[s].first, states[s].second);
      if (o.format == "json") {
        ordered_json row;
        row["name"] = m.name;
        row["substrate"] = m.substrate;
        row["kappa"] = m.kappa;
        row["state"] = label;
        row["energy_ev"] = ev;
        doc.push_back(std::move(row));
      } else if (table) {
        rows.push_back({m.name, m.substrate, label, fixed(-ev)});
      } else {
        rows.push_back({m.name, m.substrate, full(m.kappa), full(m.mu_over_me), full(m.r_s_nm), label, full(ev)});
      }
    }
  }
  if (o.format == "json") print_json(out, doc);
  else if (table) print_table(out, {"material", "substrate", "state", "-E (eV)"}, rows);
  else print_csv(out, {"name", "substrate", "kappa", "mu_over_me", "r_s_nm", "state", "energy_ev"}, rows);
  return exit_ok;
}

// ---------------------------------------------------------------- profile

struct ProfileOptions {
  std::string alpha = "1/1";
  int l = 0;
  int n = 1;
  std::string grid = "50,20000";
  std::string stencil = "cylindrical";
  std::size_t disk = 0;
  double extent = 0.0;
  std::size_t stride = 1;
};

int cmd_profile(const ProfileOptions &o, std::ostream &out, std::ostream &err) {
  const auto alpha = parse_alpha(o.alpha, err);
  SolverConfig config;
  config.stencil = parse_stencil(o.stencil);
  config.grid = parse_grid(o.grid, config.stencil);
  const auto state = solve_state(alpha, o.l, o.n, config);

  std::vector<Row> rows;
  if (o.disk > 0) {
    const auto d = disk_density(state, o.disk, o.extent);
    for (std::size_t j = 0; j < d.resolution; ++j)
      for (std::size_t i = 0; i < d.resolution; ++i) rows.push_back({full(d.x[i]), full(d.y[j]), full(d.at(i, j))});
    print_csv(out, {"x", "y", "density"}, rows);
    return exit_ok;
  }
  if (o.stride < 1) throw DomainError("--stride must be >= 1");
  const auto p = probability_profile(state);
  for (std::size_t i = 0; i < p.r.size(); i += o.stride) rows.push_back({full(p.r[i]), full(p.density[i])});
  print_csv(out, {"r", "rho"}, rows);
  return exit_ok;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Bound states of the 2D logarithmic hydrogen atom in a conical background, and the "
               "Rytova-Keldysh exciton analog."};
  app.name("conehydro");
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  const auto formats = CLI::IsMember({"table", "csv", "json"});
  const auto stencils = CLI::IsMember({"cylindrical", "central"});

  SolveOptions so;
  auto *solve = app.add_subcommand("solve", "Eigenvalues and <r>, <r^2> for one (alpha, l) channel");
  solve->add_option("--alpha", so.alpha, "Topological factor p/q")->capture_default_str();
  solve->add_option("--l", so.l, "Bare angular number (multiple of p)")->required();
  solve->add_option("--n-max", so.n_max, "Radial states n = 1..N")->capture_default_str()->check(CLI::PositiveNumber);
  solve->add_option("--grid", so.grid, "Box radius and node count, r_max,points")->capture_default_str();
  solve->add_option("--stencil", so.stencil, "Discretization")->capture_default_str()->check(stencils);
  solve->add_flag("--verify", so.verify, "Also solve by Numerov shooting and report the difference");
  solve->add_option("--format", so.format, "Output format")->capture_default_str()->check(formats);

  RulesOptions ro;
  auto *rules = app.add_subcommand("rules", "Allowed (l, alpha, l_alpha) combinations");
  rules->add_option("--l-max", ro.l_max, "Largest l listed")->capture_default_str();
  rules->add_option("--alpha", ro.alpha, "Restrict to one alpha = p/q");
  rules->add_flag("--all-denominators", ro.all_denominators,
                  "Every alpha in (1/2, 1], not only terminating decimals");
  rules->add_option("--format", ro.format, "Output format")->capture_default_str()->check(formats);

  PotentialOptions po;
  auto *potential = app.add_subcommand("potential", "Potential curves as (r, V) CSV");
  potential->add_option("--model", po.model, "effective | log2d | coulomb3d | rk | rk-log")
      ->required()
      ->check(CLI::IsMember({"effective", "log2d", "coulomb3d", "rk", "rk-log"}));
  potential->add_option("--l-alpha", po.l_alpha, "Effective angular numbers (effective model)")->delimiter(',');
  potential->add_option("--r-s", po.r_s_nm, "Screening length in nm (rk, rk-log)")->capture_default_str();
  potential->add_option("--kappa", po.kappa, "Dielectric constant")->capture_default_str();
  potential->add_option("--r-range", po.r_range,
                        "lo:hi:steps; dimensionless for effective/log2d, nm otherwise");
  potential->add_flag("--log-spacing", po.log_spacing, "Logarithmic spacing of r");

  ExcitonOptions eo;
  auto *exciton = app.add_subcommand("exciton", "Exciton energies in eV from a material file");
  exciton->add_option("--materials", eo.materials, "Material JSON file")->capture_default_str();
  exciton->add_option("--sweep-kappa", eo.sweep_kappa, "lo:hi:steps, log-spaced; kappa r_s held fixed");
  exciton->add_option("--states", eo.states, "States such as 1s,2s,3s")->capture_default_str();
  exciton->add_option("--material", eo.material, "Only this material name");
  exciton->add_option("--substrate", eo.substrate, "Only this substrate");
  exciton->add_option("--grid", eo.grid, "Box radius and node count, r_max,points")->capture_default_str();
  exciton->add_option("--format", eo.format, "Output format")->capture_default_str()->check(formats);

  ProfileOptions fo;
  auto *profile = app.add_subcommand("profile", "Radial density (r, rho) or a 2D disk raster as CSV");
  profile->add_option("--alpha", fo.alpha, "Topological factor p/q")->capture_default_str();
  profile->add_option("--l", fo.l, "Bare angular number")->required();
  profile->add_option("--n", fo.n, "Radial quantum number")->capture_default_str()->check(CLI::PositiveNumber);
  profile->add_option("--grid", fo.grid, "Box radius and node count, r_max,points")->capture_default_str();
  profile->add_option("--stencil", fo.stencil, "Discretization")->capture_default_str()->check(stencils);
  profile->add_option("--disk", fo.disk, "Emit a RES x RES raster of |psi|^2 instead (RES >= 16)");
  profile->add_option("--extent", fo.extent, "Raster half-width; 0 picks one holding all but 1e-6");
  profile->add_option("--stride", fo.stride, "Emit every k-th grid node")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    const auto subs = app.get_subcommands();
    out << (subs.empty() ? app.help() : subs.front()->help());
    return exit_ok;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError &e) {
    const auto subs = app.get_subcommands();
    err << "error: " << e.what() << "\n\n" << (subs.empty() ? app.help() : subs.front()->help());
    return exit_usage;
  }

  try {
    if (solve->parsed()) return cmd_solve(so, out, err);
    if (rules->parsed()) return cmd_rules(ro, out, err);
    if (potential->parsed()) return cmd_potential(po, out, err);
    if (exciton->parsed()) return cmd_exciton(eo, out, err);
    if (profile->parsed()) return cmd_profile(fo, out, err);
  } catch (const SelectionRuleError &e) {
    err << "error: " << e.what() << '\n';
    return exit_selection_rule;
  } catch (const ConvergenceError &e) {
    err << "error: " << e.what() << '\n';
    return exit_no_convergence;
  } catch (const SchemaError &e) {
    err << "error: " << e.what() << '\n';
    return exit_schema;
  } catch (const std::invalid_argument &e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
  return exit_usage;
}

} // namespace conehydro::cli

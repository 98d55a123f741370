#include "conehydro/core.hpp"

#include <charconv>
#include <cmath>
#include <numeric>

#include "conehydro/error.hpp"

namespace conehydro {

RationalAlpha::RationalAlpha(std::int64_t p, std::int64_t q) {
  if (p < 1 || q < 1)
    throw DomainError("alpha = p/q needs positive p and q, got " + std::to_string(p) + "/" +
                      std::to_string(q));
  if (p > q)
    throw DomainError("alpha = " + std::to_string(p) + "/" + std::to_string(q) +
                      " exceeds 1 (negative deficit angle is not supported)");
  const std::int64_t g = std::gcd(p, q);
  p_ = p / g;
  q_ = q / g;
}

std::string RationalAlpha::str() const {
  if (is_euclidean()) return "1";
  return std::to_string(p_) + "/" + std::to_string(q_);
}

namespace {

std::int64_t parse_int(std::string_view s, const std::string &whole) {
  std::int64_t v = 0;
  const auto *first = s.data();
  const auto *last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || s.empty())
    throw DomainError("cannot parse alpha '" + whole + "', expected p/q");
  return v;
}

} // namespace

RationalAlpha RationalAlpha::parse(const std::string &text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return RationalAlpha(parse_int(text, text), 1);
  const std::string_view sv(text);
  return RationalAlpha(parse_int(sv.substr(0, slash), text), parse_int(sv.substr(slash + 1), text));
}

RationalAlpha make_alpha(std::int64_t p, std::int64_t q) { return RationalAlpha(p, q); }

RadialGrid::RadialGrid(double r_min, double r_max, std::size_t n_points)
    : r_min_(r_min), r_max_(r_max), n_(n_points), h_(0.0) {
  if (!(r_min > 0.0) || !(r_max > r_min) || !std::isfinite(r_max))
    throw DomainError("radial grid needs 0 < r_min < r_max");
  if (n_points < 3) throw DomainError("radial grid needs at least 3 nodes");
  h_ = (r_max - r_min) / static_cast<double>(n_points - 1);
}

RadialGrid RadialGrid::cell_centered(double box_radius, std::size_t n_points) {
  if (!(box_radius > 0.0) || n_points < 3)
    throw DomainError("cell-centred grid needs a positive box and at least 3 nodes");
  const double h = box_radius / static_cast<double>(n_points);
  return RadialGrid(0.5 * h, box_radius - 0.5 * h, n_points);
}

RadialGrid RadialGrid::vertex(double box_radius, std::size_t n_points) {
  if (!(box_radius > 0.0) || n_points < 3)
    throw DomainError("vertex grid needs a positive box and at least 3 nodes");
  const double h = box_radius / static_cast<double>(n_points);
  return RadialGrid(h, box_radius, n_points);
}

double RadialGrid::node(std::size_t i) const { return r_min_ + static_cast<double>(i) * h_; }

std::vector<double> RadialGrid::nodes() const {
  std::vector<double> r(n_);
  for (std::size_t i = 0; i < n_; ++i) r[i] = node(i);
  return r;
}

bool RadialGrid::is_cell_centered() const { return std::abs(r_min_ - 0.5 * h_) <= 1e-9 * h_; }

RadialGrid RadialGrid::refined(std::size_t factor) const {
  if (factor < 1) throw DomainError("refinement factor must be >= 1");
  if (!is_cell_centered()) {
    if (std::abs(r_min_ - h_) <= 1e-9 * h_) return vertex(r_max_, n_ * factor);
    // generic vertex grid: keep both ends, subdivide every interval
    return RadialGrid(r_min_, r_max_, (n_ - 1) * factor + 1);
  }
  return cell_centered(r_max_ + 0.5 * h_, n_ * factor);
}

RadialGrid default_grid() { return RadialGrid::cell_centered(defaults::box_radius, defaults::grid_points); }

void SolverConfig::validate() const {
  if (!(eigenvalue_tolerance > 0.0)) throw DomainError("eigenvalue tolerance must be positive");
  if (max_states < 1) throw DomainError("max_states must be >= 1");
  if (inverse_iteration_max_steps < 1) throw DomainError("inverse iteration needs at least one step");
}

} // namespace conehydro

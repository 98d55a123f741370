#include "conehydro/selection.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "conehydro/error.hpp"

namespace conehydro {

std::vector<AngularPair> allowed_pairs(const RationalAlpha &alpha, int k_max) {
  if (k_max < 0) throw DomainError("k_max must be >= 0");
  std::vector<AngularPair> out;
  out.reserve(static_cast<std::size_t>(k_max) + 1);
  for (int k = 0; k <= k_max; ++k)
    out.push_back({static_cast<int>(k * alpha.p()), static_cast<int>(k * alpha.q())});
  return out;
}

std::vector<AngularPair> complement_pairs(const RationalAlpha &alpha, int k_max) {
  if (alpha.is_euclidean()) throw DomainError("complement of alpha = 1 is 0 and has no selection rule");
  if (k_max < 0) throw DomainError("k_max must be >= 0");
  std::vector<AngularPair> out;
  out.reserve(static_cast<std::size_t>(k_max) + 1);
  const auto pc = alpha.q() - alpha.p();
  for (int k = 0; k <= k_max; ++k)
    out.push_back({static_cast<int>(k * pc), static_cast<int>(k * alpha.q())});
  return out;
}

namespace {

bool terminating_decimal(std::int64_t q) {
  while (q % 2 == 0) q /= 2;
  while (q % 5 == 0) q /= 5;
  return q == 1;
}

bool admits(std::int64_t q, DenominatorFamily family) {
  return family == DenominatorFamily::All || terminating_decimal(q);
}

} // namespace

AlphaSet alphas_for_l(int l, int q_max, DenominatorFamily family) {
  if (l < 0) throw DomainError("alphas_for_l expects l >= 0");
  if (q_max < 1) throw DomainError("q_max must be >= 1");
  AlphaSet set;
  if (l == 0) {
    set.any_alpha = true;
    return set;
  }
  // alpha > 1/2 forces q < 2p <= 2l
  const int q_top = std::min(q_max, 2 * l);
  for (int p = 1; p <= l; ++p) {
    if (l % p != 0) continue;
    for (int q = p; q <= q_top; ++q) {
      if (2 * p <= q) break;
      if (std::gcd(p, q) != 1) continue;
      if (!admits(q, family)) continue;
      set.values.emplace_back(p, q);
    }
  }
  std::sort(set.values.begin(), set.values.end());
  set.values.erase(std::unique(set.values.begin(), set.values.end()), set.values.end());
  return set;
}

std::optional<int> effective_angular(const RationalAlpha &alpha, int l) {
  if (std::llabs(l) % alpha.p() != 0) return std::nullopt;
  return static_cast<int>(l / alpha.p() * alpha.q());
}

std::vector<int> nearest_allowed_l(const RationalAlpha &alpha, int l) {
  const auto p = alpha.p();
  const auto below = (l >= 0 ? l / p : -((-l + p - 1) / p)) * p;
  std::vector<int> out{static_cast<int>(below)};
  if (below != l) out.push_back(static_cast<int>(below + p));
  return out;
}

std::vector<RuleRow> rules_table(int l_max, DenominatorFamily family) {
  if (l_max < 0) throw DomainError("l_max must be >= 0");
  std::vector<RuleRow> rows;
  rows.push_back({0, std::nullopt, 0});
  for (int l = 1; l <= l_max; ++l) {
    for (const auto &a : alphas_for_l(l, 2 * l, family).values)
      rows.push_back({l, a, static_cast<int>(l / a.p() * a.q())});
  }
  return rows;
}

std::vector<RuleRow> rules_table(const RationalAlpha &alpha, int l_max) {
  if (l_max < 0) throw DomainError("l_max must be >= 0");
  std::vector<RuleRow> rows;
  for (const auto &pair : allowed_pairs(alpha, static_cast<int>(l_max / alpha.p())))
    rows.push_back({pair.l, alpha, pair.l_alpha});
  return rows;
}

} // namespace conehydro

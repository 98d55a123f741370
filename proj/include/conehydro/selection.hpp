#pragma once

#include <optional>
#include <vector>

#include "conehydro/core.hpp"

namespace conehydro {

/// (l, l_alpha) with l_alpha * p == l * q.
struct AngularPair {
  int l = 0;
  int l_alpha = 0;
  friend bool operator==(const AngularPair &, const AngularPair &) = default;
};

/// Pairs (k p, k q) for k = 0..k_max.
std::vector<AngularPair> allowed_pairs(const RationalAlpha &alpha, int k_max);

/// Pairs (k (q - p), k q) for the complement fraction 1 - alpha. Throws DomainError for alpha = 1.
std::vector<AngularPair> complement_pairs(const RationalAlpha &alpha, int k_max);

enum class DenominatorFamily {
  /// q = 2^a 5^b, i.e. alpha has a terminating decimal expansion (the family
  /// listed in the usual table of allowed values).
  TerminatingDecimal,
  All,
};

/// Result of alphas_for_l. For l = 0 every alpha gives l_alpha = 0, so
/// `any_alpha` is set and `values` is empty.
struct AlphaSet {
  bool any_alpha = false;
  std::vector<RationalAlpha> values; // ascending
};

/// All alpha = p/q in (1/2, 1] with q <= q_max and p | l.
AlphaSet alphas_for_l(int l, int q_max, DenominatorFamily family = DenominatorFamily::TerminatingDecimal);

/// l_alpha = l q / p when p divides |l|; std::nullopt otherwise. Sign of l is kept.
std::optional<int> effective_angular(const RationalAlpha &alpha, int l);

/// Closest values to `l` of the form k p (below and above), for error messages.
std::vector<int> nearest_allowed_l(const RationalAlpha &alpha, int l);

struct RuleRow {
  int l = 0;
  std::optional<RationalAlpha> alpha; // empty means "1/2 < alpha <= 1 (all)"
  int l_alpha = 0;
};

/// Table rows (l, alpha, l_alpha) for l = 0..l_max, alpha ascending within each l.
std::vector<RuleRow> rules_table(int l_max, DenominatorFamily family = DenominatorFamily::TerminatingDecimal);

/// Table rows for a fixed alpha and l = k p <= l_max.
std::vector<RuleRow> rules_table(const RationalAlpha &alpha, int l_max);

} // namespace conehydro

#pragma once

namespace conehydro {

/// Richardson extrapolation from results at spacing h (coarse) and h/2
/// (fine) for a method whose leading error is O(h^order).
inline double richardson(double coarse, double fine, int order) {
  const double factor = static_cast<double>(1 << order);
  return fine + (fine - coarse) / (factor - 1.0);
}

/// (e_h - e_{h/2}) / (e_{h/2} - e_{h/4}); tends to 2^order.
inline double convergence_ratio(double e_h, double e_h2, double e_h4) {
  return (e_h - e_h2) / (e_h2 - e_h4);
}

} // namespace conehydro

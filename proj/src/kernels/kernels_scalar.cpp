#include <cmath>

#include "conehydro/kernels.hpp"

namespace conehydro::kernels::scalar {

std::size_t sturm_count(std::span<const double> diag, std::span<const double> off_sq, double shift,
                        double pivmin) {
  std::size_t count = 0;
  double q = diag[0] - shift;
  if (std::fabs(q) < pivmin) q = -pivmin;
  count += q < 0.0;
  for (std::size_t i = 1; i < diag.size(); ++i) {
    q = (diag[i] - shift) - off_sq[i - 1] / q;
    if (std::fabs(q) < pivmin) q = -pivmin;
    count += q < 0.0;
  }
  return count;
}

CountBatch sturm_count4(std::span<const double> diag, std::span<const double> off_sq,
                        const ShiftBatch &shifts, double pivmin) {
  CountBatch out{};
  for (std::size_t lane = 0; lane < 4; ++lane) out[lane] = sturm_count(diag, off_sq, shifts[lane], pivmin);
  return out;
}

void tridiag_apply(std::span<const double> diag, std::span<const double> off,
                   std::span<const double> x, std::span<double> y) {
  const std::size_t n = diag.size();
  if (n == 1) {
    y[0] = diag[0] * x[0];
    return;
  }
  y[0] = diag[0] * x[0] + off[0] * x[1];
  for (std::size_t i = 1; i + 1 < n; ++i) y[i] = diag[i] * x[i] + off[i - 1] * x[i - 1] + off[i] * x[i + 1];
  y[n - 1] = diag[n - 1] * x[n - 1] + off[n - 2] * x[n - 2];
}

double dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double weighted_dot(std::span<const double> w, std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * x[i] * y[i];
  return s;
}

} // namespace conehydro::kernels::scalar

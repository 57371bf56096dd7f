#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "epps/sample.hpp"
#include "epps/summation.hpp"
#include "epps/tuning.hpp"

namespace epps {

// Epps-Pulley statistic T_{n,beta}, via the closed form
//
//   (1/n) sum_{j,k} exp(-beta^2 (Y_j - Y_k)^2 / 2)
//     - 2 / sqrt(1 + beta^2) sum_j exp(-beta^2 Y_j^2 / (2 (1 + beta^2)))
//     + n / sqrt(1 + 2 beta^2)
//
// which equals n times the phi_beta-weighted L2 distance between the
// empirical characteristic function of the scaled residuals and exp(-t^2/2).
//
// Residuals are sorted first so the result does not depend on input order.
// Each row of the double sum is accumulated with compensation, and the
// row sums are accumulated the same way.
inline double epps_pulley_statistic(const Sample& sample, const TuningParam& tp) {
  std::vector<double> y = scaled_residuals(sample);
  std::sort(y.begin(), y.end());
  const std::size_t n = y.size();
  const double nd = static_cast<double>(n);
  const double b2 = tp.beta2();
  const double g = tp.gamma();
  const double d = tp.delta();

  // Off-diagonal pairs counted once and doubled; the diagonal contributes n.
  CompensatedSum pairs;
  for (std::size_t j = 0; j < n; ++j) {
    CompensatedSum row;
    for (std::size_t k = j + 1; k < n; ++k) {
      const double diff = y[j] - y[k];
      row += std::exp(-g * diff * diff);
    }
    pairs += row.value();
  }
  const double first = (nd + 2.0 * pairs.value()) / nd;

  CompensatedSum single;
  for (double v : y) single += std::exp(-d * v * v);
  const double second = 2.0 / std::sqrt(1.0 + b2) * single.value();

  const double third = nd / std::sqrt(1.0 + 2.0 * b2);
  // The exact value is a weighted L2 norm; rounding may leave a tiny negative.
  return std::max(0.0, first - second + third);
}

}  // namespace epps

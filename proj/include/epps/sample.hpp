#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "epps/error.hpp"
#include "epps/summation.hpp"

namespace epps {

// A univariate sample with its mean and maximum-likelihood variance.
//
// NOTE: the variance uses divisor n, not n - 1. The statistic is defined in
// terms of the ML scale estimate; most statistics packages default to n - 1.
class Sample {
 public:
  explicit Sample(std::vector<double> values) : values_(std::move(values)) {
    if (values_.size() < 2)
      throw DegenerateSampleError("degenerate sample: need at least 2 observations, got " +
                                  std::to_string(values_.size()));
    for (double v : values_)
      if (!std::isfinite(v)) throw InputError("sample contains a non-finite value");

    const double n = static_cast<double>(values_.size());
    CompensatedSum s;
    for (double v : values_) s += v;
    mean_ = s.value() / n;

    CompensatedSum ss;
    for (double v : values_) ss += (v - mean_) * (v - mean_);
    variance_ml_ = ss.value() / n;
    if (!(variance_ml_ > 0.0)) throw DegenerateSampleError("degenerate sample: zero variance");
  }

  explicit Sample(std::span<const double> values)
      : Sample(std::vector<double>(values.begin(), values.end())) {}

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double mean() const noexcept { return mean_; }
  double variance_ml() const noexcept { return variance_ml_; }

 private:
  std::vector<double> values_;
  double mean_ = 0.0;
  double variance_ml_ = 0.0;
};

// Y_j = (X_j - mean) / S_n with S_n^2 the ML variance.
inline std::vector<double> scaled_residuals(const Sample& sample) {
  const double mean = sample.mean();
  const double inv_sd = 1.0 / std::sqrt(sample.variance_ml());
  std::vector<double> y;
  y.reserve(sample.size());
  for (double x : sample.values()) y.push_back((x - mean) * inv_sd);
  return y;
}

}  // namespace epps

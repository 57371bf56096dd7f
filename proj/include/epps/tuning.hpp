#pragma once

#include <cmath>
#include <string>

#include "epps/error.hpp"

namespace epps {

// The weight parameter beta > 0 together with the two exponents that
// recur throughout the slope expansion:
//   gamma = beta^2 / 2,   delta = beta^2 / (2 (1 + beta^2)).
class TuningParam {
 public:
  explicit TuningParam(double beta) : beta_(beta) {
    if (!std::isfinite(beta) || beta <= 0.0)
      throw InputError("tuning parameter beta must be finite and > 0, got " +
                       std::to_string(beta));
    const double b2 = beta * beta;
    gamma_ = 0.5 * b2;
    delta_ = 0.5 * b2 / (1.0 + b2);
  }

  double beta() const noexcept { return beta_; }
  double beta2() const noexcept { return beta_ * beta_; }
  double gamma() const noexcept { return gamma_; }
  double delta() const noexcept { return delta_; }

  friend bool operator==(const TuningParam&, const TuningParam&) = default;

 private:
  double beta_;
  double gamma_;
  double delta_;
};

}  // namespace epps

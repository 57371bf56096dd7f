#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace epps {

// Raised for input that cannot be parsed or violates a documented precondition.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what, std::size_t line = 0)
      : std::invalid_argument(what), line_(line) {}

  // 1-based line number in the originating file, 0 when not file-backed.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A sample without spread: scaled residuals are undefined.
class DegenerateSampleError : public std::domain_error {
 public:
  explicit DegenerateSampleError(const std::string& what = "degenerate sample")
      : std::domain_error(what) {}
};

// A numerical routine failed to meet its contract. For quadrature the best
// estimate reached and its error bound are carried along.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what, double best_estimate = 0.0,
                          double error_bound = 0.0)
      : std::runtime_error(what),
        best_estimate_(best_estimate),
        error_bound_(error_bound) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double best_estimate_;
  double error_bound_;
};

}  // namespace epps

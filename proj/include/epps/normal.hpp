#pragma once

#include <cmath>
#include <numbers>

namespace epps::normal {

inline constexpr double kInvSqrt2Pi = 0.3989422804014326779399460599343819;
inline constexpr double kLogSqrt2Pi = 0.9189385332046727417803297364056176;

inline double pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

// Density of N(mu, sigma^2) given sigma, not sigma^2.
inline double pdf(double x, double mu, double sigma) {
  return pdf((x - mu) / sigma) / sigma;
}

inline double log_pdf(double x) { return -0.5 * x * x - kLogSqrt2Pi; }

inline double cdf(double x) {
  return 0.5 * std::erfc(-x * std::numbers::sqrt2 / 2.0);
}

// Mills ratio R(z) = (1 - Phi(z)) / phi(z) for z >= 5, by the Laplace
// continued fraction evaluated with the modified Lentz method.
inline double mills_ratio_tail(double z) {
  constexpr double tiny = 1e-300;
  double f = z;
  double c = z;
  double d = 0.0;
  for (int k = 1; k < 500; ++k) {
    d = z + k * d;
    if (d == 0.0) d = tiny;
    c = z + k / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return 1.0 / f;
}

// log Phi(x) without underflow for large negative x.
inline double log_cdf(double x) {
  if (x > 5.0) return std::log1p(-0.5 * std::erfc(x * std::numbers::sqrt2 / 2.0));
  if (x > -5.0) return std::log(cdf(x));
  return log_pdf(x) + std::log(mills_ratio_tail(-x));
}

}  // namespace epps::normal

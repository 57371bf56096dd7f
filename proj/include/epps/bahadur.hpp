#pragma once

#include <cmath>
#include <string>

#include "epps/alternatives.hpp"
#include "epps/error.hpp"
#include "epps/normal.hpp"
#include "epps/quadrature.hpp"
#include "epps/spectral.hpp"
#include "epps/tuning.hpp"

namespace epps {

// Ingredients of the quadratic coefficient of b(theta) at theta = 0.
struct ExpansionCoefficients {
  double mu1 = 0.0;     // int x g'
  double mu2 = 0.0;     // int x g''
  double sigma1 = 0.0;  // int x^2 g'
  double sigma2 = 0.0;  // int x^2 g'' - 2 mu1^2
  double j10 = 0.0;     // int e^{-delta x^2} g'
  double j11 = 0.0;     // int e^{-delta x^2} x g'
  double j12 = 0.0;     // int e^{-delta x^2} x^2 g'
  double j2 = 0.0;      // int e^{-delta x^2} g''
  double d0 = 0.0;      // iint e^{-gamma (x - y)^2} g'(x) g'(y)
};

inline ExpansionCoefficients expansion_coefficients(const AlternativeFamily& family, const TuningParam& tp,
                                                    const QuadratureConfig& cfg = {}) {
  const QuadratureConfig c = cfg.for_beta(tp);
  const double delta = tp.delta();
  const double gamma = tp.gamma();
  const auto& d1 = family.d1;
  const auto& d2 = family.d2;

  ExpansionCoefficients e;
  e.mu1 = integrate_1d([&](double x) { return x * d1(x); }, c).value;
  e.mu2 = integrate_1d([&](double x) { return x * d2(x); }, c).value;
  e.sigma1 = integrate_1d([&](double x) { return x * x * d1(x); }, c).value;
  e.sigma2 = integrate_1d([&](double x) { return x * x * d2(x); }, c).value - 2.0 * e.mu1 * e.mu1;
  e.j10 = integrate_1d([&](double x) { return std::exp(-delta * x * x) * d1(x); }, c).value;
  e.j11 = integrate_1d([&](double x) { return std::exp(-delta * x * x) * x * d1(x); }, c).value;
  e.j12 = integrate_1d([&](double x) { return std::exp(-delta * x * x) * x * x * d1(x); }, c).value;
  e.j2 = integrate_1d([&](double x) { return std::exp(-delta * x * x) * d2(x); }, c).value;
  e.d0 = integrate_2d(
             [&](double x, double y) {
               const double d = x - y;
               return std::exp(-gamma * d * d) * d1(x) * d1(y);
             },
             c)
             .value;
  return e;
}

// Delta_beta, the theta^2 coefficient of b(theta), assembled from the
// expansion coefficients.
inline double local_index(const ExpansionCoefficients& e, const TuningParam& tp) {
  const double b2 = tp.beta2();
  const double mixed = ((e.j10 - e.j12) * e.sigma1 - 2.0 * e.j11 * e.mu1) * b2 + e.j10 * e.sigma1 -
                       2.0 * e.j11 * e.mu1;
  const double moments = (2.0 * e.mu1 * e.mu1 + 0.75 * e.sigma1 * e.sigma1) * b2 + e.mu1 * e.mu1;
  return e.d0 + b2 / std::pow(b2 + 1.0, 2.5) * mixed + b2 / std::pow(2.0 * b2 + 1.0, 2.5) * moments;
}

inline double local_index(const AlternativeFamily& family, const TuningParam& tp,
                          const QuadratureConfig& cfg = {}) {
  return local_index(expansion_coefficients(family, tp, cfg), tp);
}

namespace detail {

struct Moments {
  double mean = 0.0;
  double variance = 1.0;
};

// Mean and variance of g(.; theta) computed from the departure g - phi so
// that the null contribution is exact.
template <class R>
Moments departure_moments(const R& r, const QuadratureConfig& c) {
  Moments m;
  m.mean = integrate_1d([&](double x) { return x * r(x); }, c).value;
  m.variance = 1.0 + integrate_1d([&](double x) { return x * x * r(x); }, c).value - m.mean * m.mean;
  if (!(m.variance > 0.0)) throw NumericalError("alternative has non-positive variance");
  return m;
}

}  // namespace detail

// Probability limit b(theta) of T_{n,beta} / n when X ~ g(.; theta):
//
//   iint exp(-gamma (x - y)^2 / s^2) g(x) g(y) dx dy
//     - 2 / sqrt(1 + beta^2) int exp(-delta (x - m)^2 / s^2) g(x) dx
//     + 1 / sqrt(1 + 2 beta^2)
//
// with m, s^2 the mean and variance of g(.; theta). Nothing is expanded in
// theta. Writing g = phi + r, the phi-phi and phi-r parts are integrated in
// closed form so only the O(theta) departure r goes through quadrature and
// the O(1) terms cancel analytically rather than in rounding.
inline double stochastic_limit(const AlternativeFamily& family, double theta, const TuningParam& tp,
                               const QuadratureConfig& cfg = {}) {
  if (!family.admits(theta))
    throw InputError("theta = " + std::to_string(theta) + " is outside the domain of " + family.name);
  const QuadratureConfig c = cfg.for_beta(tp);
  const double b2 = tp.beta2();
  auto r = [&](double x) { return family.density(x, theta) - normal::pdf(x); };
  const detail::Moments m = detail::departure_moments(r, c);

  const double g = tp.gamma() / m.variance;
  const double d = tp.delta() / m.variance;

  // int exp(-g (x - y)^2) phi(y) dy
  auto smooth = [g](double x) { return std::exp(-g * x * x / (1.0 + 2.0 * g)) / std::sqrt(1.0 + 2.0 * g); };
  const double pair_null = 1.0 / std::sqrt(1.0 + 4.0 * g);
  const double pair_cross = 2.0 * integrate_1d([&](double x) { return r(x) * smooth(x); }, c).value;
  const double pair_dep = integrate_2d(
                              [&](double x, double y) {
                                const double u = x - y;
                                return std::exp(-g * u * u) * r(x) * r(y);
                              },
                              c)
                              .value;

  const double mu = m.mean;
  const double single_null = std::exp(-d * mu * mu / (1.0 + 2.0 * d)) / std::sqrt(1.0 + 2.0 * d);
  const double single_dep = integrate_1d(
                                [&](double x) {
                                  const double u = x - mu;
                                  return std::exp(-d * u * u) * r(x);
                                },
                                c)
                                .value;

  return (pair_null + pair_cross + pair_dep) - 2.0 / std::sqrt(1.0 + b2) * (single_null + single_dep) +
         1.0 / std::sqrt(1.0 + 2.0 * b2);
}

// min over normal laws N(m, s^2) of KL(g(.; theta) || N(m, s^2)). The
// minimiser matches the first two moments of g. Evaluated as
//   int psi [ (g/psi) log(g/psi) - g/psi + 1 ],
// whose integrand is pointwise non-negative and O(theta^2).
namespace detail {

// K(theta) / theta^2, with the scaling applied inside the integrand.
inline double scaled_kl(const AlternativeFamily& family, double theta, const QuadratureConfig& cfg) {
  auto r = [&](double x) { return family.density(x, theta) - normal::pdf(x); };
  const Moments m = departure_moments(r, cfg);
  const double sd = std::sqrt(m.variance);
  const double inv_t2 = 1.0 / (theta * theta);

  auto f = [&](double x) {
    const double psi = normal::pdf(x, m.mean, sd);
    const double gx = family.density(x, theta);
    if (gx < 0.0) throw NumericalError(family.name + " density is negative at theta = " + std::to_string(theta));
    if (psi == 0.0) return 0.0;
    const double u = gx / psi - 1.0;
    double h;
    if (std::abs(u) < 1e-4)
      h = u * u * (0.5 - u * (1.0 / 6.0 - u / 12.0));
    else
      h = (1.0 + u) * std::log1p(u) - u;
    return psi * h * inv_t2;
  };
  const double q = integrate_1d(f, cfg).value;
  if (!std::isfinite(q)) throw NumericalError("KL divergence is not finite for " + family.name);
  return q;
}

}  // namespace detail

inline double kl_to_nearest_normal(const AlternativeFamily& family, double theta,
                                   const QuadratureConfig& cfg = {}) {
  if (!family.admits(theta))
    throw InputError("theta = " + std::to_string(theta) + " is outside the domain of " + family.name);
  if (theta == 0.0) return 0.0;
  return theta * theta * detail::scaled_kl(family, theta, cfg);
}

// Local index of the likelihood-ratio benchmark: the theta^2 coefficient of
// 2 K(theta), with K the KL distance from g(.; theta) to the normal model.
// Uses the five-point central second difference with step h when the family
// extends to both sides of 0, otherwise extrapolates K(t) / t^2 to 0 by a
// quadratic through t = k * one_sided_h, k = 1, 2, 3.
inline double lrt_local_index(const AlternativeFamily& family, const QuadratureConfig& cfg = {},
                              double h = 1e-2, double one_sided_h = 1e-4) {
  if (family.admits(-2.0 * h) && family.admits(2.0 * h)) {
    auto kl = [&](double t) { return kl_to_nearest_normal(family, t, cfg); };
    return (-kl(2.0 * h) + 16.0 * kl(h) + 16.0 * kl(-h) - kl(-2.0 * h)) / (12.0 * h * h);
  }
  if (!family.admits(3.0 * one_sided_h))
    throw InputError("LRT step is outside the domain of " + family.name);
  const double q1 = detail::scaled_kl(family, one_sided_h, cfg);
  const double q2 = detail::scaled_kl(family, 2.0 * one_sided_h, cfg);
  const double q3 = detail::scaled_kl(family, 3.0 * one_sided_h, cfg);
  return 2.0 * (3.0 * q1 - 3.0 * q2 + q3);
}

struct SlopeReport {
  std::string family;
  double beta = 0.0;
  double delta_beta = 0.0;
  double lambda1 = 0.0;
  double local_index = 0.0;  // delta_beta / lambda1
  double lrt_index = 0.0;
  double efficiency = 0.0;   // local_index / lrt_index
  SpectrumProtocol protocol;  // protocol that produced lambda1

  friend bool operator==(const SlopeReport&, const SlopeReport&) = default;
};

// Assembles a report from a precomputed largest eigenvalue and LRT index.
inline SlopeReport slope_report(const AlternativeFamily& family, const TuningParam& tp, double lambda1_value,
                                double lrt_index, const SpectrumProtocol& protocol,
                                const QuadratureConfig& cfg = {}) {
  if (!(lambda1_value > 0.0)) throw NumericalError("largest eigenvalue estimate is not positive");
  if (!(lrt_index > 0.0)) throw NumericalError("LRT local index is not positive for " + family.name);
  SlopeReport rep;
  rep.family = family.name;
  rep.beta = tp.beta();
  rep.delta_beta = local_index(family, tp, cfg);
  rep.lambda1 = lambda1_value;
  rep.local_index = rep.delta_beta / lambda1_value;
  rep.lrt_index = lrt_index;
  rep.efficiency = rep.local_index / lrt_index;
  rep.protocol = protocol;
  return rep;
}

inline SlopeReport slope_report(const AlternativeFamily& family, const TuningParam& tp,
                                const SpectrumProtocol& protocol = {}, const QuadratureConfig& cfg = {}) {
  return slope_report(family, tp, lambda1(tp, protocol), lrt_local_index(family, cfg), protocol, cfg);
}

}  // namespace epps

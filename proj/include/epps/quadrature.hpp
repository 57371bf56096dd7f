#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "epps/error.hpp"
#include "epps/summation.hpp"
#include "epps/tuning.hpp"

namespace epps {

struct QuadratureConfig {
  double truncation_radius = 12.0;
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_subdivisions = 2000;

  void validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
      throw InputError("quadrature tolerances must be positive");
    if (!(truncation_radius >= 8.0))
      throw InputError("quadrature truncation radius must be >= 8");
    if (max_subdivisions < 1) throw InputError("max_subdivisions must be >= 1");
  }

  // Small beta flattens the Gaussian factors exp(-delta x^2); widen the range.
  QuadratureConfig for_beta(const TuningParam& tp) const {
    QuadratureConfig c = *this;
    if (tp.beta() < 0.5) c.truncation_radius = std::max(c.truncation_radius, 20.0);
    return c;
  }

  static QuadratureConfig precise() {
    QuadratureConfig c;
    c.abs_tol = 1e-13;
    c.rel_tol = 1e-12;
    c.max_subdivisions = 4000;
    return c;
  }

  friend bool operator==(const QuadratureConfig&, const QuadratureConfig&) = default;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int subdivisions = 0;
};

namespace detail {

struct Panel {
  double a, b, value, error;
};

// 21-point Gauss-Kronrod panel with the QUADPACK error heuristic. Nodes and
// weights come from Boost.Math.
template <class F>
Panel gk21_panel(F& f, double a, double b) {
  using kronrod = boost::math::quadrature::gauss_kronrod<double, 21>;
  using gauss = boost::math::quadrature::gauss<double, 10>;
  const auto& x = kronrod::abscissa();
  const auto& wk = kronrod::weights();
  const auto& wg = gauss::weights();

  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  double fv[21];
  fv[0] = f(centre);
  for (std::size_t i = 1; i < x.size(); ++i) {
    fv[2 * i - 1] = f(centre - half * x[i]);
    fv[2 * i] = f(centre + half * x[i]);
  }

  double resk = fv[0] * wk[0];
  double resabs = std::abs(resk);
  double resg = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double pair = fv[2 * i - 1] + fv[2 * i];
    resk += wk[i] * pair;
    resabs += wk[i] * (std::abs(fv[2 * i - 1]) + std::abs(fv[2 * i]));
    if (i % 2 == 1) resg += wg[i / 2] * pair;
  }
  const double mean = 0.5 * resk;
  double resasc = wk[0] * std::abs(fv[0] - mean);
  for (std::size_t i = 1; i < x.size(); ++i)
    resasc += wk[i] * (std::abs(fv[2 * i - 1] - mean) + std::abs(fv[2 * i] - mean));

  resk *= half;
  resg *= half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);

  double err = std::abs(resk - resg);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
    err = std::max(50.0 * eps * resabs, err);
  return {a, b, resk, err};
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod integration of f over [a, b]. The interval
// is first cut into unit-width panels so that features narrower than the
// range are seen by the first sweep; the panel with the largest error is then
// bisected until the total error meets max(abs_tol, rel_tol |value|).
template <class F>
QuadratureResult integrate(F&& f, double a, double b, const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(b > a)) {
    if (a == b) return {};
    throw InputError("integration bounds must satisfy a <= b");
  }

  auto by_error = [](const detail::Panel& l, const detail::Panel& r) { return l.error < r.error; };
  std::priority_queue<detail::Panel, std::vector<detail::Panel>, decltype(by_error)> heap(by_error);

  const int initial = std::clamp(static_cast<int>(std::ceil(b - a)), 1, 64);
  const double width = (b - a) / initial;
  double value = 0.0;
  double error = 0.0;
  for (int i = 0; i < initial; ++i) {
    const double lo = a + i * width;
    const double hi = (i + 1 == initial) ? b : a + (i + 1) * width;
    detail::Panel p = detail::gk21_panel(f, lo, hi);
    if (!std::isfinite(p.value))
      throw NumericalError("integrand is not finite on [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "]");
    value += p.value;
    error += p.error;
    heap.push(p);
  }

  int subdivisions = 0;
  auto sum_panels = [&heap]() {
    std::vector<detail::Panel> panels;
    auto copy = heap;
    while (!copy.empty()) {
      panels.push_back(copy.top());
      copy.pop();
    }
    std::sort(panels.begin(), panels.end(),
              [](const detail::Panel& l, const detail::Panel& r) { return l.a < r.a; });
    CompensatedSum v, e;
    for (const auto& p : panels) {
      v += p.value;
      e += p.error;
    }
    return std::pair{v.value(), e.value()};
  };

  while (error > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value))) {
    if (subdivisions >= cfg.max_subdivisions) {
      auto [v, e] = sum_panels();
      throw NumericalError("quadrature did not converge after " + std::to_string(subdivisions) +
                               " subdivisions (estimate " + std::to_string(v) + ", error " +
                               std::to_string(e) + ")",
                           v, e);
    }
    detail::Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      auto [v, e] = sum_panels();
      throw NumericalError("quadrature reached the resolution limit of double precision", v, e);
    }
    heap.pop();
    detail::Panel left = detail::gk21_panel(f, worst.a, mid);
    detail::Panel right = detail::gk21_panel(f, mid, worst.b);
    if (!std::isfinite(left.value) || !std::isfinite(right.value))
      throw NumericalError("integrand is not finite near " + std::to_string(mid));
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++subdivisions;
    // Running totals drift; resynchronise occasionally.
    if (subdivisions % 64 == 0) std::tie(value, error) = sum_panels();
  }
  auto [v, e] = sum_panels();
  return {v, e, subdivisions};
}

// Integral over the real line, truncated to [-R, R].
template <class F>
QuadratureResult integrate_1d(F&& f, const QuadratureConfig& cfg) {
  const double r = cfg.truncation_radius;
  return integrate(std::forward<F>(f), -r, r, cfg);
}

// Double integral over the plane, truncated to [-R, R]^2, as an outer 1D
// integral of inner 1D integrals with the same tolerances.
template <class F>
QuadratureResult integrate_2d(F&& f, const QuadratureConfig& cfg) {
  const double r = cfg.truncation_radius;
  double worst_inner = 0.0;
  auto outer = [&](double x) {
    QuadratureResult in = integrate([&](double y) { return f(x, y); }, -r, r, cfg);
    worst_inner = std::max(worst_inner, in.error);
    return in.value;
  };
  QuadratureResult res = integrate(outer, -r, r, cfg);
  res.error += 2.0 * r * worst_inner;
  return res;
}

// Closed-form Gaussian identities.

// iint exp(-gamma (x - y)^2) (x - y)^(2k) phi(x) phi(y) dx dy, k in {0, 1, 2}.
inline double gaussian_pair_moment(int k, double gamma) {
  if (k < 0 || k > 2) throw InputError("gaussian_pair_moment: k must be 0, 1 or 2");
  if (!(gamma > 0.0)) throw InputError("gaussian_pair_moment: gamma must be > 0");
  const double kh = k + 0.5;
  return std::pow(4.0, k) * std::tgamma(kh) /
         (std::sqrt(std::numbers::pi) * std::pow(4.0 * gamma + 1.0, kh));
}

// int exp(-gamma (x - y)^2) phi(x) dx = exp(-delta y^2) / sqrt(1 + beta^2),
// with beta^2 = 2 gamma.
inline double smoothed_density_identity(double y, double gamma) {
  if (!(gamma > 0.0)) throw InputError("smoothed_density_identity: gamma must be > 0");
  const double b2 = 2.0 * gamma;
  const double delta = 0.5 * b2 / (1.0 + b2);
  return std::exp(-delta * y * y) / std::sqrt(1.0 + b2);
}

// int exp(-gamma (x - y)^2) (x - y)^2 phi(y) dy
//   = exp(-delta x^2) (x^2 + beta^2 + 1) / (1 + beta^2)^(5/2).
inline double smoothed_square_identity(double x, const TuningParam& tp) {
  const double b2 = tp.beta2();
  return std::exp(-tp.delta() * x * x) * (x * x + b2 + 1.0) / std::pow(1.0 + b2, 2.5);
}

}  // namespace epps

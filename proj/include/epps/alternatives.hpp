#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "epps/error.hpp"
#include "epps/normal.hpp"

namespace epps {

// A one-parameter family g(x; theta) of densities with g(x; 0) = phi(x),
// together with its analytic theta-derivatives at theta = 0.
struct AlternativeFamily {
  std::string name;
  std::function<double(double x, double theta)> density;
  std::function<double(double x)> d1;  // d/dtheta g(x; theta) at 0
  std::function<double(double x)> d2;  // d^2/dtheta^2 g(x; theta) at 0
  // Values of theta for which density() is a valid density. Contamination
  // families are only defined on one side of the null, so the lower bound
  // may equal 0.
  double theta_lo = -std::numeric_limits<double>::infinity();
  double theta_hi = std::numeric_limits<double>::infinity();

  bool admits(double theta) const {
    return theta == 0.0 || (theta > theta_lo && theta < theta_hi) ||
           (theta_lo == 0.0 && theta >= 0.0 && theta < theta_hi);
  }
};

namespace detail {
inline std::string short_number(double v) {
  std::string s = std::to_string(v);
  s.erase(s.find_last_not_of('0') + 1);
  if (s.back() == '.') s.pop_back();
  return s;
}
}  // namespace detail

// g1(x; theta) = (1 + theta) Phi(x)^theta phi(x).
inline AlternativeFamily lehmann() {
  AlternativeFamily f;
  f.name = "lehmann";
  f.density = [](double x, double theta) {
    return (1.0 + theta) * std::exp(theta * normal::log_cdf(x)) * normal::pdf(x);
  };
  f.d1 = [](double x) { return normal::pdf(x) * (1.0 + normal::log_cdf(x)); };
  f.d2 = [](double x) {
    const double l = normal::log_cdf(x);
    return normal::pdf(x) * (2.0 * l + l * l);
  };
  f.theta_lo = -1.0;
  return f;
}

// g2(x; theta) = phi(x) exp(-theta (1 - Phi(x))) (1 + theta Phi(x)).
inline AlternativeFamily ley_paindaveine_1() {
  AlternativeFamily f;
  f.name = "lp1";
  f.density = [](double x, double theta) {
    const double p = normal::cdf(x);
    return normal::pdf(x) * std::exp(-theta * (1.0 - p)) * (1.0 + theta * p);
  };
  f.d1 = [](double x) { return normal::pdf(x) * (2.0 * normal::cdf(x) - 1.0); };
  f.d2 = [](double x) {
    const double p = normal::cdf(x);
    const double q = 1.0 - p;
    return normal::pdf(x) * (q * q - 2.0 * p * q);
  };
  f.theta_lo = -1.0;
  return f;
}

// g3(x; theta) = phi(x) (1 - theta pi cos(pi Phi(x))).
inline AlternativeFamily ley_paindaveine_2() {
  AlternativeFamily f;
  f.name = "lp2";
  f.density = [](double x, double theta) {
    return normal::pdf(x) * (1.0 - theta * std::numbers::pi * std::cos(std::numbers::pi * normal::cdf(x)));
  };
  f.d1 = [](double x) {
    return -std::numbers::pi * normal::pdf(x) * std::cos(std::numbers::pi * normal::cdf(x));
  };
  f.d2 = [](double) { return 0.0; };
  f.theta_lo = -1.0 / std::numbers::pi;
  f.theta_hi = 1.0 / std::numbers::pi;
  return f;
}

// g4(x; theta) = (1 - theta) phi(x) + theta phi((x - mu) / sigma) / sigma.
inline AlternativeFamily contamination(double mu, double sigma2) {
  if (!std::isfinite(mu) || !std::isfinite(sigma2) || !(sigma2 > 0.0))
    throw InputError("contamination: need finite mu and sigma2 > 0");
  if (mu == 0.0 && sigma2 == 1.0)
    throw InputError("contamination: (mu, sigma2) = (0, 1) is degenerate, every theta gives the null");
  const double sigma = std::sqrt(sigma2);
  AlternativeFamily f;
  f.name = "contam:" + detail::short_number(mu) + ":" + detail::short_number(sigma2);
  f.density = [mu, sigma](double x, double theta) {
    return (1.0 - theta) * normal::pdf(x) + theta * normal::pdf(x, mu, sigma);
  };
  f.d1 = [mu, sigma](double x) { return normal::pdf(x, mu, sigma) - normal::pdf(x); };
  f.d2 = [](double) { return 0.0; };
  f.theta_lo = 0.0;
  f.theta_hi = 1.0;
  return f;
}

// Parses "lehmann", "lp1", "lp2" or "contam:MU:SIGMA2".
inline AlternativeFamily family_from_name(const std::string& name) {
  if (name == "lehmann") return lehmann();
  if (name == "lp1") return ley_paindaveine_1();
  if (name == "lp2") return ley_paindaveine_2();
  if (name.rfind("contam:", 0) == 0) {
    const auto rest = name.substr(7);
    const auto colon = rest.find(':');
    if (colon == std::string::npos) throw InputError("expected contam:MU:SIGMA2, got '" + name + "'");
    double mu = 0.0, s2 = 0.0;
    try {
      std::size_t used = 0;
      const std::string ms = rest.substr(0, colon), ss = rest.substr(colon + 1);
      mu = std::stod(ms, &used);
      if (used != ms.size()) throw std::invalid_argument(ms);
      s2 = std::stod(ss, &used);
      if (used != ss.size()) throw std::invalid_argument(ss);
    } catch (const std::logic_error&) {
      throw InputError("expected contam:MU:SIGMA2 with numeric fields, got '" + name + "'");
    }
    return contamination(mu, s2);
  }
  throw InputError("unknown alternative '" + name + "' (expected lehmann, lp1, lp2 or contam:MU:SIGMA2)");
}

// The six rows of the efficiency table, in order.
inline std::vector<AlternativeFamily> table2_families() {
  return {lehmann(), ley_paindaveine_1(), ley_paindaveine_2(),
          contamination(1.0, 1.0), contamination(0.5, 1.0), contamination(0.0, 0.5)};
}

}  // namespace epps

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "epps/error.hpp"
#include "epps/normal.hpp"
#include "epps/quadrature.hpp"
#include "epps/random.hpp"
#include "epps/summation.hpp"
#include "epps/tuning.hpp"

namespace epps {

// Covariance kernel of the limiting Gaussian process under the null,
//   K(s, t) = exp(-(s - t)^2 / 2) - (1 + st + (st)^2 / 2) exp(-(s^2 + t^2) / 2).
inline double kernel(double s, double t) {
  const double d = s - t;
  const double st = s * t;
  return std::exp(-0.5 * d * d) - (1.0 + st + 0.5 * st * st) * std::exp(-0.5 * (s * s + t * t));
}

// K(t, t) = 1 - (1 + u + u^2 / 2) e^{-u} with u = t^2, evaluated without
// cancellation near 0 through the series e^{-u} sum_{k >= 3} u^k / k!.
inline double kernel_diagonal(double t) {
  const double u = t * t;
  if (u > 0.5) return 1.0 - (1.0 + u + 0.5 * u * u) * std::exp(-u);
  double term = u * u * u / 6.0;
  double sum = 0.0;
  for (int k = 4; k < 40 && term > 1e-18 * sum; ++k) {
    sum += term;
    term *= u / k;
  }
  return std::exp(-u) * sum;
}

struct SpectrumProtocol {
  int n_points = 1000;
  int runs = 10;
  std::uint64_t seed = 42;
  int top_m = 5;

  void validate() const {
    if (n_points < 100) throw InputError("n_points must be >= 100");
    if (runs < 1) throw InputError("runs must be >= 1");
    if (top_m < 1 || top_m > n_points) throw InputError("top_m must lie in [1, n_points]");
  }

  friend bool operator==(const SpectrumProtocol&, const SpectrumProtocol&) = default;
};

struct SpectrumResult {
  double beta = 0.0;
  SpectrumProtocol protocol;
  std::vector<double> eigenvalues;               // mean over runs, descending
  std::vector<std::vector<double>> per_run;      // runs x top_m, clipped at 0
  std::vector<double> run_eigenvalue_sums;       // raw, all N eigenvalues
  std::vector<double> run_matrix_traces;         // (1/N) sum_i K(y_i, y_i)
  double trace_estimate = 0.0;                   // mean of run_matrix_traces
  int clipped_negatives = 0;

  friend bool operator==(const SpectrumResult&, const SpectrumResult&) = default;
};

// N i.i.d. nodes from N(0, beta^2) drawn from the given stream.
inline std::vector<double> nystrom_nodes(const TuningParam& tp, int n, std::uint64_t seed) {
  RandomStream rng(seed);
  std::vector<double> y(n);
  for (double& v : y) v = tp.beta() * rng.normal();
  return y;
}

namespace detail {

struct RunSpectrum {
  std::vector<double> top;  // descending, raw
  double eigen_sum = 0.0;
  double trace = 0.0;
};

inline RunSpectrum nystrom_run(const TuningParam& tp, int n, int top_m, std::uint64_t seed, int run) {
  const std::vector<double> y = nystrom_nodes(tp, n, seed);
  const double inv_n = 1.0 / n;
  Eigen::MatrixXd m(n, n);
  CompensatedSum trace;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      const double k = kernel(y[i], y[j]) * inv_n;
      m(i, j) = k;
      m(j, i) = k;
    }
    m(i, i) = kernel(y[i], y[i]) * inv_n;
    trace += m(i, i);
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw NumericalError("symmetric eigensolver failed in run " + std::to_string(run));

  const Eigen::VectorXd& ev = solver.eigenvalues();  // ascending
  RunSpectrum out;
  CompensatedSum sum;
  for (int i = 0; i < n; ++i) sum += ev(i);
  out.eigen_sum = sum.value();
  out.trace = trace.value();
  for (int i = 0; i < top_m; ++i) out.top.push_back(ev(n - 1 - i));
  return out;
}

}  // namespace detail

// Randomised Nystrom approximation of the spectrum of the integral operator
// f -> int K(., t) f(t) phi_beta(t) dt. Each run draws N nodes from
// N(0, beta^2), forms the symmetric matrix (K(y_i, y_j) / N) and takes its
// eigenvalues; the reported spectrum is the per-rank mean over runs.
inline SpectrumResult nystrom_spectrum(const TuningParam& tp, const SpectrumProtocol& protocol) {
  protocol.validate();
  SpectrumResult res;
  res.beta = tp.beta();
  res.protocol = protocol;
  res.eigenvalues.assign(protocol.top_m, 0.0);

  std::vector<CompensatedSum> rank_sums(protocol.top_m);
  CompensatedSum traces;
  for (int r = 0; r < protocol.runs; ++r) {
    detail::RunSpectrum run = detail::nystrom_run(
        tp, protocol.n_points, protocol.top_m, stream_seed(protocol.seed, static_cast<std::uint64_t>(r)), r);
    for (double& v : run.top) {
      if (v < 0.0) {
        ++res.clipped_negatives;
        v = 0.0;
      }
    }
    for (int k = 0; k < protocol.top_m; ++k) rank_sums[k] += run.top[k];
    traces += run.trace;
    res.run_eigenvalue_sums.push_back(run.eigen_sum);
    res.run_matrix_traces.push_back(run.trace);
    res.per_run.push_back(std::move(run.top));
  }
  for (int k = 0; k < protocol.top_m; ++k) res.eigenvalues[k] = rank_sums[k].value() / protocol.runs;
  // Means of descending vectors are descending; enforce it against rounding.
  std::sort(res.eigenvalues.begin(), res.eigenvalues.end(), std::greater<>());
  res.trace_estimate = traces.value() / protocol.runs;
  return res;
}

// Trace of the covariance operator, int K(t, t) phi_beta(t) dt. This is the
// null mean of the limiting statistic.
inline double operator_trace(const TuningParam& tp, const QuadratureConfig& cfg = {}) {
  const double b = tp.beta();
  // Substituting t = beta z keeps the weight a standard normal density.
  auto f = [b](double z) { return kernel_diagonal(b * z) * normal::pdf(z); };
  return integrate_1d(f, cfg).value;
}

// Largest eigenvalue lambda_1(beta) under the given protocol.
inline double lambda1(const TuningParam& tp, SpectrumProtocol protocol = {}) {
  protocol.top_m = 1;
  return nystrom_spectrum(tp, protocol).eigenvalues.front();
}

}  // namespace epps

#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "epps/error.hpp"
#include "epps/random.hpp"
#include "epps/spectral.hpp"

namespace epps {

// Monte Carlo approximation of the limiting null law sum_j lambda_j N_j^2.
// The leading eigenvalues carry the chi-square terms; the spectral mass not
// captured by them (operator trace minus their sum) is added as a constant,
// which matches the mean exactly and ignores the variance of the remainder.
class NullDistribution {
 public:
  NullDistribution(std::vector<double> eigenvalues, double trace, int mc_samples, std::uint64_t seed)
      : eigenvalues_(std::move(eigenvalues)), trace_(trace) {
    if (mc_samples < 1) throw InputError("mc_samples must be >= 1");
    if (eigenvalues_.empty()) throw InputError("null distribution needs at least one eigenvalue");
    double head = 0.0;
    for (double v : eigenvalues_) head += v;
    shift_ = std::max(0.0, trace_ - head);

    RandomStream rng(seed);
    draws_.resize(mc_samples);
    for (double& d : draws_) {
      double s = shift_;
      for (double l : eigenvalues_) {
        const double z = rng.normal();
        s += l * z * z;
      }
      d = s;
    }
    std::sort(draws_.begin(), draws_.end());
  }

  // P(T >= statistic) under the approximation.
  double p_value(double statistic) const {
    const auto it = std::lower_bound(draws_.begin(), draws_.end(), statistic);
    return static_cast<double>(draws_.end() - it) / static_cast<double>(draws_.size());
  }

  double remainder_shift() const noexcept { return shift_; }
  double trace() const noexcept { return trace_; }
  const std::vector<double>& eigenvalues() const noexcept { return eigenvalues_; }
  std::size_t samples() const noexcept { return draws_.size(); }

 private:
  std::vector<double> eigenvalues_;
  double trace_;
  double shift_ = 0.0;
  std::vector<double> draws_;
};

// Null law for tuning parameter beta: Nystrom eigenvalues (top_m from the
// protocol), operator trace by quadrature, Monte Carlo draws seeded from a
// stream distinct from the Nystrom runs.
inline NullDistribution make_null_distribution(const TuningParam& tp, const SpectrumProtocol& protocol,
                                               int mc_samples, const QuadratureConfig& cfg = {}) {
  const SpectrumResult spec = nystrom_spectrum(tp, protocol);
  const double trace = operator_trace(tp, cfg);
  return NullDistribution(spec.eigenvalues, trace, mc_samples, stream_seed(protocol.seed, 0xC0FFEEULL));
}

}  // namespace epps

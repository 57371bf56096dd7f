#include <cmath>

#include <gtest/gtest.h>

#include "epps/null_distribution.hpp"
#include "epps/random.hpp"
#include "epps/statistic.hpp"

using namespace epps;

namespace {

const NullDistribution& null_beta1() {
  static const NullDistribution d = [] {
    SpectrumProtocol p;
    p.top_m = 20;
    return make_null_distribution(TuningParam(1.0), p, 100000);
  }();
  return d;
}

}  // namespace

TEST(NullDistribution, Basics) {
  const auto& d = null_beta1();
  EXPECT_EQ(d.samples(), 100000u);
  EXPECT_EQ(d.eigenvalues().size(), 20u);
  EXPECT_GE(d.remainder_shift(), 0.0);
  EXPECT_EQ(d.p_value(-1.0), 1.0);
  EXPECT_EQ(d.p_value(1e9), 0.0);
  EXPECT_GE(d.p_value(0.1), d.p_value(0.2));
}

TEST(NullDistribution, MeanMatchesTrace) {
  // E sum lambda_j N_j^2 + shift = sum lambda_j + shift = trace
  const std::vector<double> ev{0.3, 0.2, 0.1};
  const NullDistribution d(ev, 1.0, 200000, 9);
  EXPECT_NEAR(d.remainder_shift(), 0.4, 1e-15);
  // p-value at median of shifted chi-square mixture is about 1/2
  EXPECT_GT(d.p_value(0.4 + 0.45), 0.3);
  EXPECT_LT(d.p_value(0.4 + 0.45), 0.7);
}

TEST(NullDistribution, RejectsBadArguments) {
  EXPECT_THROW(NullDistribution({0.1}, 0.2, 0, 1), InputError);
  EXPECT_THROW(NullDistribution({}, 0.2, 10, 1), InputError);
}

TEST(NullDistribution, SingleChiSquareTail) {
  // lambda N^2 with lambda = trace = 1: P(N^2 > 3.841459) = 0.05
  const NullDistribution d({1.0}, 1.0, 400000, 3);
  EXPECT_NEAR(d.p_value(3.841458820694124), 0.05, 0.002);
}

TEST(NullDistribution, RoughlyUniformUnderNull) {
  const auto& d = null_beta1();
  RandomStream rng(555);
  int small = 0;
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<double> x(200);
    for (double& v : x) v = rng.normal();
    if (d.p_value(epps_pulley_statistic(Sample(x), TuningParam(1.0))) < 0.025) ++small;
  }
  EXPECT_GE(small, 1);
  EXPECT_LE(small, 9);
}

TEST(NullDistribution, DetectsSkewedAlternative) {
  const auto& d = null_beta1();
  RandomStream rng(556);
  int rejected = 0;
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<double> x(200);
    for (double& v : x) v = 2.0 - std::log(rng.uniform());
    if (d.p_value(epps_pulley_statistic(Sample(x), TuningParam(1.0))) < 0.01) ++rejected;
  }
  EXPECT_GE(rejected, 95);
}

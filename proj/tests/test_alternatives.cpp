#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "epps/alternatives.hpp"
#include "epps/quadrature.hpp"
#include "oracles.hpp"

using namespace epps;

namespace {

std::vector<AlternativeFamily> all_families() { return table2_families(); }

}  // namespace

class FamilyProperties : public ::testing::TestWithParam<int> {
 protected:
  AlternativeFamily f = all_families()[GetParam()];
};

TEST_P(FamilyProperties, NullEmbedding) {
  for (double x = -8.0; x <= 8.0; x += 0.25) EXPECT_NEAR(f.density(x, 0.0), normal::pdf(x), 1e-12) << x;
}

TEST_P(FamilyProperties, Normalisation) {
  QuadratureConfig cfg;
  for (double theta : {0.01, 0.05, 0.1, 0.2}) {
    if (!f.admits(theta)) continue;
    EXPECT_NEAR(integrate_1d([&](double x) { return f.density(x, theta); }, cfg).value, 1.0, 1e-8)
        << f.name << " theta=" << theta;
    if (f.admits(-theta))
      EXPECT_NEAR(integrate_1d([&](double x) { return f.density(x, -theta); }, cfg).value, 1.0, 1e-8);
  }
  EXPECT_NEAR(integrate_1d(f.d1, cfg).value, 0.0, 1e-8);
  EXPECT_NEAR(integrate_1d(f.d2, cfg).value, 0.0, 1e-8);
}

TEST_P(FamilyProperties, NullMoments) {
  QuadratureConfig cfg;
  EXPECT_NEAR(integrate_1d([&](double x) { return x * f.density(x, 0.0); }, cfg).value, 0.0, 1e-9);
  EXPECT_NEAR(integrate_1d([&](double x) { return x * x * f.density(x, 0.0); }, cfg).value, 1.0, 1e-9);
}

TEST_P(FamilyProperties, DerivativesMatchFiniteDifferences) {
  const double h = 1e-3;
  const bool two_sided = f.admits(-2 * h);
  for (double x : {-4.0, -2.0, -1.0, 0.0, 0.5, 1.3, 2.0, 3.5}) {
    auto g = [&](double t) { return f.density(x, t); };
    const double fd1 = two_sided ? oracle::fd_first(g, h) : oracle::fd_first_forward(g, h);
    const double fd2 = two_sided ? oracle::fd_second(g, 1e-2) : oracle::fd_second_forward(g, 1e-2);
    EXPECT_NEAR(f.d1(x), fd1, 1e-6) << f.name << " x=" << x;
    EXPECT_NEAR(f.d2(x), fd2, 1e-6) << f.name << " x=" << x;
  }
}

INSTANTIATE_TEST_SUITE_P(SixFamilies, FamilyProperties, ::testing::Range(0, 6));

TEST(Lehmann, DerivativeAtZero) {
  const auto f = lehmann();
  EXPECT_NEAR(f.d1(0.0), normal::kInvSqrt2Pi * (1.0 - std::numbers::ln2), 1e-15);
  EXPECT_NEAR(f.d1(0.0), 0.398942280401433 * 0.306852819440055, 1e-14);
  for (double x : {-2.0, 0.0, 2.0}) EXPECT_EQ(f.density(x, 0.0), normal::pdf(x));
  // finite far into the left tail where Phi underflows
  EXPECT_TRUE(std::isfinite(f.d2(-40.0)));
  EXPECT_TRUE(std::isfinite(f.density(-40.0, 0.1)));
}

TEST(LeyPaindaveine1, OddFirstDerivative) {
  const auto f = ley_paindaveine_1();
  EXPECT_NEAR(f.d1(0.0), 0.0, 1e-17);
  for (double x : {0.3, 1.0, 2.5, 5.0}) EXPECT_NEAR(f.d1(-x), -f.d1(x), 1e-15);
  for (double x : {-1.0, 0.5, 2.0})
    EXPECT_NEAR(f.d2(x), oracle::fd_second([&](double t) { return f.density(x, t); }, 1e-2), 1e-6);
}

TEST(LeyPaindaveine2, LinearInTheta) {
  const auto f = ley_paindaveine_2();
  EXPECT_NEAR(f.d1(0.0), 0.0, 1e-16);
  for (double x : {-3.0, -0.7, 0.0, 1.1, 4.0}) EXPECT_EQ(f.d2(x), 0.0);
  EXPECT_NEAR(integrate_1d(f.d1, {}).value, 0.0, 1e-10);
}

TEST(Contamination, DegenerateAndValues) {
  EXPECT_THROW(contamination(0.0, 1.0), InputError);
  EXPECT_THROW(contamination(0.0, -1.0), InputError);
  const auto f = contamination(1.0, 1.0);
  EXPECT_EQ(f.name, "contam:1:1");
  EXPECT_EQ(contamination(0.5, 1.0).name, "contam:0.5:1");
  EXPECT_EQ(contamination(0.0, 0.5).name, "contam:0:0.5");
  EXPECT_NEAR(f.d1(0.0), normal::pdf(-1.0) - normal::pdf(0.0), 1e-16);
  EXPECT_NEAR(f.d1(0.0), 0.241970724519143 - 0.398942280401433, 1e-14);
  EXPECT_EQ(f.density(0.7, 0.0), normal::pdf(0.7));
  EXPECT_FALSE(f.admits(-0.01));
  EXPECT_TRUE(f.admits(0.01));
}

TEST(FamilyFromName, ParsesAllForms) {
  EXPECT_EQ(family_from_name("lehmann").name, "lehmann");
  EXPECT_EQ(family_from_name("lp1").name, "lp1");
  EXPECT_EQ(family_from_name("lp2").name, "lp2");
  EXPECT_EQ(family_from_name("contam:0.5:1").name, "contam:0.5:1");
  EXPECT_THROW(family_from_name("contam:0:1"), InputError);
  EXPECT_THROW(family_from_name("contam:x:1"), InputError);
  EXPECT_THROW(family_from_name("contam:1"), InputError);
  EXPECT_THROW(family_from_name("cauchy"), InputError);
}

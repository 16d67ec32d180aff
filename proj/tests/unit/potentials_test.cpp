#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "floquet/error.hpp"
#include "floquet/potentials.hpp"
#include "oracles.hpp"

namespace floquet {
namespace {

TEST(PotentialsTest, AnalyticBounds) {
  EXPECT_EQ(builtin_potential("zero").sup_grad_x1, 0.0);
  EXPECT_EQ(builtin_potential("cosine").sup_grad_x1, 1.0);
  EXPECT_EQ(builtin_potential("smooth_linear").sup_grad_x1, 1.0);
  EXPECT_EQ(builtin_potential("modulated_cosine").sup_grad_x1, 1.0);
  EXPECT_EQ(builtin_potential("zero").sup_hess_x1, 0.0);
  EXPECT_EQ(builtin_potential("cosine").sup_hess_x1, 1.0);
  EXPECT_EQ(builtin_potential("smooth_linear").sup_hess_x1, 1.0);
  EXPECT_EQ(builtin_potential("modulated_cosine").sup_hess_x1, 1.0);
}

TEST(PotentialsTest, UnknownNameIsRejected) {
  EXPECT_THROW(builtin_potential("quadratic"), PreconditionError);
}

TEST(PotentialsTest, SmoothLinearGradientApproachesBoundFromBelow) {
  const PotentialSpec v = builtin_potential("smooth_linear");
  double largest = 0.0;
  for (double x = -1e6; x <= 1e6; x += 997.0) {
    largest = std::max(largest, std::abs(v.grad_x1(0.0, x)));
  }
  EXPECT_LE(largest, 1.0);
  EXPECT_GT(largest, 1.0 - 1e-9);
  EXPECT_DOUBLE_EQ(v.hess_x1(0.0, 0.0), 1.0);
}

TEST(PotentialsTest, CosineBoundIsAttained) {
  const PotentialSpec v = builtin_potential("cosine");
  EXPECT_DOUBLE_EQ(std::abs(v.grad_x1(0.0, std::numbers::pi / 2)), 1.0);
}

class BuiltinPotentialTest : public ::testing::TestWithParam<std::string> {};

TEST_P(BuiltinPotentialTest, DerivativesMatchFiniteDifferences) {
  const PotentialSpec v = builtin_potential(GetParam());
  auto rng = testing::seeded_rng(7);
  std::uniform_real_distribution<double> t_dist(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> x_dist(-30.0, 30.0);
  for (int i = 0; i < 1000; ++i) {
    const double t = t_dist(rng);
    const double x = x_dist(rng);
    auto at_t = [&](double y) { return v.eval(t, y); };
    auto grad_at_t = [&](double y) { return v.grad_x1(t, y); };
    EXPECT_NEAR(v.grad_x1(t, x), testing::central_difference(at_t, x), 1e-6);
    EXPECT_NEAR(v.hess_x1(t, x), testing::central_difference(grad_at_t, x),
                1e-6);
    EXPECT_LE(std::abs(v.grad_x1(t, x)), v.sup_grad_x1 + 1e-12);
    EXPECT_LE(std::abs(v.hess_x1(t, x)), v.sup_hess_x1 + 1e-12);
    EXPECT_NEAR(v.eval(t + 2.0 * std::numbers::pi, x), v.eval(t, x), 1e-12);
  }
}

INSTANTIATE_TEST_SUITE_P(All, BuiltinPotentialTest,
                         ::testing::ValuesIn(builtin_potential_names()));

TEST(ThresholdTest, Examples) {
  const PotentialSpec cosine = builtin_potential("cosine");
  const ThresholdCheck a = check_threshold(1.0, 0.5, cosine);
  EXPECT_TRUE(a.satisfied);
  EXPECT_DOUBLE_EQ(a.margin, 0.5);

  const ThresholdCheck b = check_threshold(0.5, 0.2, cosine);
  EXPECT_TRUE(b.satisfied);
  EXPECT_NEAR(b.margin, 0.3, 1e-15);

  const ThresholdCheck c =
      check_threshold(0.3, 0.5, builtin_potential("smooth_linear"));
  EXPECT_FALSE(c.satisfied);
  EXPECT_NEAR(c.margin, -0.2, 1e-15);
}

TEST(ThresholdTest, SignOfMuIrrelevantAndBoundaryIsStrict) {
  const PotentialSpec cosine = builtin_potential("cosine");
  EXPECT_TRUE(check_threshold(0.5, -0.2, cosine).satisfied);
  EXPECT_FALSE(check_threshold(0.5, 0.5, cosine).satisfied);
  EXPECT_TRUE(check_threshold(0.5, 100.0, builtin_potential("zero")).satisfied);
}

TEST(ThresholdTest, NonPositiveEpsIsRejected) {
  const PotentialSpec cosine = builtin_potential("cosine");
  EXPECT_THROW(check_threshold(0.0, 0.1, cosine), PreconditionError);
  EXPECT_THROW(check_threshold(-1.0, 0.1, cosine), PreconditionError);
}

TEST(CustomPotentialTest, RequiresAnalyticBounds) {
  auto f = [](double, double x) { return std::sin(2.0 * x); };
  auto g = [](double, double x) { return 2.0 * std::cos(2.0 * x); };
  auto h = [](double, double x) { return -4.0 * std::sin(2.0 * x); };
  const PotentialSpec v = custom_potential("sin2x", f, g, h, 2.0, 4.0);
  EXPECT_FALSE(check_threshold(1.0, 0.5, v).satisfied);
  EXPECT_THROW(custom_potential("bad", f, g, h, -1.0, 4.0), PreconditionError);
  EXPECT_THROW(custom_potential("bad", f, g, h, INFINITY, 4.0),
               PreconditionError);
  EXPECT_THROW(custom_potential("bad", f, nullptr, h, 1.0, 4.0),
               PreconditionError);
}

}  // namespace
}  // namespace floquet

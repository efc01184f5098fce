#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "resonance/errors.hpp"
#include "resonance/weights.hpp"

using namespace resonance;
using namespace resonance::weights;

TEST(Weights, BumpShape) {
  const auto w = make_bump(1e5, 400.0);
  EXPECT_EQ(eval_weight(w, 1e5), 0.0);
  EXPECT_EQ(eval_weight(w, 1e5 + 400.0), 0.0);
  EXPECT_DOUBLE_EQ(eval_weight(w, 1e5 + 200.0), 1.0);
  EXPECT_EQ(eval_weight(w, 1e5 - 1.0), 0.0);
  EXPECT_NEAR(eval_weight_derivative(w, 1e5 + 200.0), 0.0, 1e-15);
  for (double u = 0.01; u < 1.0; u += 0.01) {
    const double v = eval_weight(w, 1e5 + 400.0 * u);
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
  EXPECT_THROW(make_bump(0.0, 1.0), DomainError);
  EXPECT_THROW(make_bump(1.0, -1.0), DomainError);
}

TEST(Weights, PlateauShape) {
  const auto w = make_plateau(1e4, 100.0);
  EXPECT_DOUBLE_EQ(w.M1, 1e4 + 25.0);
  EXPECT_DOUBLE_EQ(w.M2, 1e4 + 75.0);
  for (double x = w.M1 + 0.5; x < w.M2; x += 1.0) EXPECT_EQ(eval_weight(w, x), 1.0);
  EXPECT_EQ(eval_weight_derivative(w, 1e4 + 50.0), 0.0);
  EXPECT_EQ(eval_weight(w, 1e4), 0.0);
  EXPECT_NEAR(w.left_ramp() + w.flat() + w.right_ramp(), 1.0, 1e-12);
  EXPECT_THROW(make_plateau(1e4, 100.0, 0.6, 0.6), DomainError);
}

TEST(Weights, ScaleInvariance) {
  const auto a = make_bump(1e5, 300.0);
  const auto b = make_bump(1e6, 7000.0);
  for (double u = 0.05; u < 1.0; u += 0.05) {
    EXPECT_NEAR(eval_weight(a, a.M + u * a.Delta), eval_weight(b, b.M + u * b.Delta), 1e-9);
  }
}

TEST(Weights, DerivativeMatchesFiniteDifference) {
  std::mt19937_64 rng(7);
  for (auto w : {make_bump(1e5, 1000.0), make_plateau(1e5, 1000.0)}) {
    std::uniform_real_distribution<double> u(w.M, w.M + w.Delta);
    for (int i = 0; i < 100; ++i) {
      const double x = u(rng);
      const double h = 1e-3;
      const double fd = (eval_weight(w, x + h) - eval_weight(w, x - h)) / (2 * h);
      EXPECT_NEAR(eval_weight_derivative(w, x), fd, 1e-6 / w.Delta) << x;
    }
  }
}

TEST(Weights, DerivativeBounds) {
  const auto c5 = check_derivative_bounds(make_bump(1e5, 2000.0), 4);
  const auto c6 = check_derivative_bounds(make_bump(1e6, 5e4), 4);
  ASSERT_EQ(c5.size(), 5u);
  EXPECT_NEAR(c5[0], 1.0, 1e-6);
  EXPECT_LE(c5[1], 8.0);
  EXPECT_LT(c5[2], 200.0);
  for (int nu = 0; nu <= 4; ++nu) EXPECT_NEAR(c5[nu], c6[nu], 0.05 * c5[nu]) << nu;
  const auto cp = check_derivative_bounds(make_plateau(1e5, 2000.0), 4);
  for (double c : cp) EXPECT_TRUE(std::isfinite(c));
  EXPECT_THROW(check_derivative_bounds(make_bump(1e5, 2000.0), 5), DomainError);
}

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "resonance/errors.hpp"
#include "resonance/forms.hpp"
#include "resonance/sums.hpp"

using namespace resonance;
using namespace resonance::sums;

namespace {

const forms::CoefficientTable& tau2() {
  static const auto t = forms::sym_lift_table(forms::normalize_gl2(forms::tau_table(40000)), 2, 40000);
  return t;
}

// long double reference: no chunking, no compensation, phase reduced late
cplx naive(const forms::CoefficientTable& t, double M, double Delta, std::int64_t d, int n, Twist tw) {
  long double re = 0, im = 0;
  const long double pi2 = 2 * std::numbers::pi_v<long double>;
  for (auto m = static_cast<std::int64_t>(std::ceil(M)); m <= static_cast<std::int64_t>(std::floor(M + Delta)); ++m) {
    long double ph = 0;
    const long double nd = n;
    if (tw == Twist::linear) ph = std::pow((long double)d, 1 / nd) * m / std::pow((long double)M, 1 - 1 / nd);
    if (tw == Twist::nonlinear) ph = nd * std::pow((long double)d * m, 1 / nd);
    ph -= std::floor(ph);
    re += t(m) * std::cos(pi2 * ph);
    im += t(m) * std::sin(pi2 * ph);
  }
  return {(double)re, (double)im};
}

}  // namespace

TEST(ExpSum, EmptyRangeAndCounts) {
  const auto u = forms::CoefficientTable::unit(3, 100);
  SumSpec s{&u, 10.2, 0.5, 1, Twist::none, std::nullopt};
  const auto r = exp_sum(s);
  EXPECT_EQ(r.terms, 0);
  EXPECT_EQ(r.value, cplx(0.0));
  s.M = 10.0;
  s.Delta = 10.0;
  const auto r2 = exp_sum(s);
  EXPECT_EQ(r2.terms, 11);
  EXPECT_EQ(r2.value, cplx(11.0));
}

TEST(ExpSum, MatchesNaiveOracle) {
  for (Twist tw : {Twist::none, Twist::linear, Twist::nonlinear}) {
    for (std::int64_t d : {1, 2, 5}) {
      SumSpec s{&tau2(), 1e4, 1000.0, d, tw, std::nullopt};
      const auto r = exp_sum(s);
      const cplx want = naive(tau2(), 1e4, 1000.0, d, 2, tw);
      EXPECT_LT(std::abs(r.value - want), 1e-10 * r.abs_sum) << int(tw) << " " << d;
      EXPECT_LE(r.accumulation_error, 1e-9 * r.abs_sum);
    }
  }
}

TEST(ExpSum, ThreadCountDoesNotChangeBits) {
  SumSpec s{&tau2(), 3e3, 30000.0, 1, Twist::linear, weights::make_bump(3e3, 30000.0)};
  const auto one = exp_sum(s, 1);
  for (int t : {2, 3, 8}) {
    const auto r = exp_sum(s, t);
    EXPECT_EQ(r.value.real(), one.value.real());
    EXPECT_EQ(r.value.imag(), one.value.imag());
    EXPECT_EQ(r.abs_sum, one.abs_sum);
  }
}

TEST(ExpSum, LinearInCoefficientsAndTriangle) {
  const auto& t = tau2();
  std::vector<double> twice(t.values().begin(), t.values().end());
  for (auto& v : twice) v *= 2;
  const forms::CoefficientTable t2(2, twice, true);
  SumSpec s{&t, 2e4, 5000.0, 3, Twist::linear, std::nullopt};
  const auto a = exp_sum(s);
  s.table = &t2;
  const auto b = exp_sum(s);
  EXPECT_LT(std::abs(b.value - 2.0 * a.value), 1e-12 * b.abs_sum);
  EXPECT_LE(std::abs(a.value), a.abs_sum * (1 + 1e-12));
}

TEST(ExpSum, Errors) {
  const auto u = forms::CoefficientTable::unit(2, 100);
  SumSpec s{&u, 95.0, 10.0, 1, Twist::linear, std::nullopt};
  EXPECT_THROW(exp_sum(s), RangeError);
  s.Delta = 2.0;
  s.weight = weights::make_bump(90.0, 2.0);
  EXPECT_THROW(exp_sum(s), ConfigError);
  s.weight.reset();
  s.d = 0;
  EXPECT_THROW(exp_sum(s), DomainError);
  s.table = nullptr;
  EXPECT_THROW(exp_sum(s), ConfigError);
}

TEST(GeometricSum, ClosedFormMatchesLoop) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> th(-3.0, 3.0);
  std::uniform_int_distribution<std::int64_t> len(1, 100000);
  for (int i = 0; i < 100; ++i) {
    const double theta = th(rng);
    const auto D = len(rng);
    const cplx c = geometric_sum(D, theta), l = geometric_sum_direct(D, theta);
    EXPECT_LE(std::abs(c - l), 1e-12 * std::max(1.0, std::abs(l)) + 1e-12 * std::sqrt((double)D)) << theta << " " << D;
  }
  EXPECT_EQ(geometric_sum(1000, 0.0), cplx(1000.0));
  EXPECT_EQ(geometric_sum(7, 3.0), cplx(7.0));
  for (std::int64_t D : {10, 1000, 100000}) EXPECT_GE(std::abs(geometric_sum(D, 0.1 / D)), 0.9 * D);
  EXPECT_THROW(geometric_sum(0, 0.1), DomainError);
}

TEST(Windowed, MatchesDirectSums) {
  const auto& t = tau2();
  const double M = 1e4;
  const std::int64_t Delta = 50;
  for (std::int64_t td : {0, 2}) {
    const auto w = windowed_plain_sums(t, M, Delta, td);
    ASSERT_EQ(w.size(), static_cast<std::size_t>(window_span(M, 2) + 1));
    std::mt19937_64 rng(td + 1);
    std::uniform_int_distribution<std::size_t> pick(0, w.size() - 1);
    for (int i = 0; i < 20; ++i) {
      const auto k = pick(rng);
      SumSpec s{&t, M + k, Delta - 1.0, td == 0 ? 1 : td, td == 0 ? Twist::none : Twist::linear, std::nullopt};
      // the linear twist inside the window is taken relative to the scan base M
      cplx want = 0;
      for (std::int64_t m = (std::int64_t)M + k; m < (std::int64_t)M + (std::int64_t)k + Delta; ++m) {
        want += t(m) * (td == 0 ? cplx(1.0) : unit_phase(twist_phase(Twist::linear, M, td, 2, m)));
      }
      if (td == 0) {
        EXPECT_LT(std::abs(exp_sum(s).value - w[k]), 1e-10);
      }
      EXPECT_LT(std::abs(w[k] - want), 1e-10) << td << " " << k;
    }
  }
  const auto one = windowed_plain_sums(t, 100.0, 1, 0);
  for (std::size_t k = 0; k < one.size(); ++k) EXPECT_LT(std::abs(one[k] - t(100 + k)), 1e-14);
  EXPECT_THROW(windowed_plain_sums(t, 39990.0, 50, 0), RangeError);
}

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <filesystem>
#include <functional>
#include <numeric>
#include <vector>

#include "resonance/errors.hpp"
#include "resonance/forms.hpp"

using namespace resonance;
using namespace resonance::forms;

namespace {

const TauTable& tau_small() {
  static const TauTable t = tau_table(20000);
  return t;
}

// q prod_{k <= N} (1 - q^k)^24 truncated at q^N, by repeated multiplication.
std::vector<long long> brute_delta(int N) {
  std::vector<long long> c(N + 1, 0);
  c[1] = 1;
  for (int k = 1; k <= N; ++k) {
    for (int r = 0; r < 24; ++r) {
      for (int i = N; i >= k; --i) c[i] -= c[i - k];
    }
  }
  return c;
}

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t q = 2; q * q <= p; ++q) {
    if (p % q == 0) return false;
  }
  return true;
}

std::complex<double> brute_h(const std::vector<std::complex<double>>& x, int k) {
  // sum over multisets of size k, by nested recursion
  std::complex<double> total = 0.0;
  std::function<void(int, int, std::complex<double>)> rec = [&](int start, int left, std::complex<double> prod) {
    if (left == 0) {
      total += prod;
      return;
    }
    for (int i = start; i < static_cast<int>(x.size()); ++i) rec(i, left - 1, prod * x[i]);
  };
  rec(0, k, 1.0);
  return total;
}

}  // namespace

TEST(Tau, LeadingValues) {
  EXPECT_TRUE(tau_table(1)(1) == 1);
  const auto& t = tau_small();
  EXPECT_TRUE(t(2) == -24);
  EXPECT_TRUE(t(3) == 252);
  EXPECT_TRUE(t(6) == t(2) * t(3));
  EXPECT_TRUE(t(10) == -115920);
}

TEST(Tau, MatchesBruteForceProduct) {
  const auto c = brute_delta(60);
  const auto& t = tau_small();
  for (int m = 1; m <= 60; ++m) EXPECT_TRUE(t(m) == c[m]) << "m=" << m;
}

TEST(Tau, MultiplicativeAndHecke) {
  const auto& t = tau_small();
  const std::uint64_t N = t.n_max();
  for (std::uint64_t a = 2; a * a <= N; ++a) {
    for (std::uint64_t b = a + 1; a * b <= N; ++b) {
      if (std::gcd(a, b) == 1) {
        ASSERT_TRUE(t(a * b) == t(a) * t(b)) << a << "*" << b;
      }
    }
  }
  for (std::uint64_t p = 2; p * p <= N; ++p) {
    if (!is_prime(p)) continue;
    int128 p11 = 1;
    for (int i = 0; i < 11; ++i) p11 *= p;
    for (std::uint64_t pk = p; pk * p <= N; pk *= p) {
      ASSERT_TRUE(t(pk * p) == t(p) * t(pk) - p11 * (pk == p ? 1 : t(pk / p)));
    }
  }
}

TEST(Tau, RangeAndCache) {
  EXPECT_THROW(tau_table(0), RangeError);
  EXPECT_THROW(tau_table(TauTable::kMaxSize + 1), RangeError);
  const auto path = std::filesystem::temp_directory_path() / "resonance_tau_test.bin";
  const auto small = tau_table(500);
  write_tau_cache(small, path);
  const auto back = read_tau_cache(path);
  ASSERT_EQ(back.n_max(), 500u);
  for (std::uint64_t m = 1; m <= 500; ++m) EXPECT_TRUE(back(m) == small(m));
  const auto head = load_or_build_tau(100, path);
  EXPECT_EQ(head.n_max(), 100u);
  EXPECT_TRUE(head(100) == small(100));
  std::filesystem::remove(path);
}

TEST(Gl2, Normalization) {
  const auto g = normalize_gl2(tau_small());
  EXPECT_DOUBLE_EQ(g(1), 1.0);
  EXPECT_NEAR(g(4), g(2) * g(2) - 1.0, 1e-13);
  EXPECT_NEAR(g(2), -24.0 / std::pow(2.0, 5.5), 1e-15);
  for (std::uint64_t p = 2; p <= g.n_max(); ++p) {
    if (is_prime(p)) {
      ASSERT_LE(std::abs(g(p)), 2.0 + 1e-12) << p;
    }
  }
  EXPECT_THROW(normalize_gl2(tau_small(), 10), UnsupportedError);
}

TEST(Satake, Parameters) {
  EXPECT_NEAR(std::abs(satake_parameter(2.0) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(satake_parameter(0.0) - std::complex<double>(0, 1)), 0.0, 1e-15);
  const auto a = satake_parameter(1.0);
  EXPECT_NEAR(std::abs(a - std::polar(1.0, M_PI / 3)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(a + 1.0 / a - 1.0), 0.0, 1e-15);
  EXPECT_GE(satake_parameter(-1.3).imag(), 0.0);
  EXPECT_THROW(satake_parameter(2.1), DomainError);
}

TEST(SymLift, PrimePowersMatchBruteForce) {
  const auto g = normalize_gl2(tau_small());
  for (int n : {3, 4}) {
    const auto A = sym_lift_table(g, n, g.n_max());
    EXPECT_DOUBLE_EQ(A(1), 1.0);
    for (std::uint64_t p = 2; p <= 1000; ++p) {
      if (!is_prime(p)) continue;
      const auto alpha = satake_parameter(g(p));
      std::vector<std::complex<double>> x;
      for (int j = n - 1; j >= 1 - n; j -= 2) x.push_back(std::pow(alpha, j));
      std::uint64_t q = p;
      for (int k = 1; k <= 4 && q <= A.n_max(); ++k, q *= p) {
        ASSERT_NEAR(A(q), brute_h(x, k).real(), 1e-10) << "n=" << n << " p=" << p << " k=" << k;
      }
    }
  }
  const auto A3 = sym_lift_table(g, 3, 1000);
  EXPECT_NEAR(A3(7), g(7) * g(7) - 1.0, 1e-12);
  EXPECT_NEAR(A3(6), A3(2) * A3(3), 1e-13);
}

TEST(SymLift, RankTwoIsTheSeriesAndDualIsIdentity) {
  const auto g = normalize_gl2(tau_small());
  const auto A = sym_lift_table(g, 2, 5000);
  for (std::uint64_t m = 1; m <= 5000; ++m) ASSERT_EQ(A(m), g(m));
  const auto D = dual_table(sym_lift_table(g, 3, 5000));
  EXPECT_DOUBLE_EQ(D(1), 1.0);
  const auto T = sym_lift_table(g, 3, 5000);
  for (std::uint64_t m = 1; m <= 5000; ++m) ASSERT_EQ(D(m), T(m));
  EXPECT_THROW(dual_table(CoefficientTable(3, {0.0, 1.0, 2.0}, false)), UnsupportedError);
  EXPECT_THROW(sym_lift_table(g, 5, 100), UnsupportedError);
  EXPECT_THROW(sym_lift_table(g, 3, g.n_max() + 1), RangeError);
}

TEST(SymLift, MultiplicativeOnCoprimePairs) {
  const auto g = normalize_gl2(tau_small());
  const auto A = sym_lift_table(g, 4, 20000);
  for (std::uint64_t a = 2; a <= 140; ++a) {
    for (std::uint64_t b = a + 1; a * b <= 20000; ++b) {
      if (std::gcd(a, b) == 1) {
        ASSERT_NEAR(A(a * b), A(a) * A(b), 1e-9 * (1 + std::abs(A(a * b))));
      }
    }
  }
}

TEST(RankinSelberg, Bracket) {
  const auto g = normalize_gl2(tau_small());
  for (int n : {2, 3, 4}) {
    const auto A = sym_lift_table(g, n, g.n_max());
    EXPECT_DOUBLE_EQ(rankin_selberg_ratio(A, 1), 1.0);
    for (std::uint64_t x = 1000; x <= 10000; x *= 2) {
      const double r = rankin_selberg_ratio(A, x);
      EXPECT_GE(r, 0.05);
      EXPECT_LE(r, 20.0);
      const double ratio = rankin_selberg_ratio(A, 2 * x) / r;
      EXPECT_GE(ratio, 0.25);
      EXPECT_LE(ratio, 4.0);
    }
  }
  EXPECT_THROW(rankin_selberg_ratio(CoefficientTable::unit(2, 10), 11), RangeError);
}

TEST(Theta, Table) {
  EXPECT_EQ(theta_bound(2).num, 7);
  EXPECT_EQ(theta_bound(2).den, 64);
  EXPECT_EQ(theta_bound(3).num, 5);
  EXPECT_EQ(theta_bound(3).den, 14);
  EXPECT_EQ(theta_bound(4).num, 9);
  EXPECT_EQ(theta_bound(4).den, 22);
  EXPECT_NEAR(theta_bound(5).value(), 0.5 - 2.0 / 26.0, 1e-15);
  EXPECT_EQ(theta_bound_holomorphic().num, 0);
  for (int n = 5; n <= 12; ++n) {
    EXPECT_GE(theta_bound(n).value(), 0.0);
    EXPECT_LT(theta_bound(n).value(), 0.5);
  }
}

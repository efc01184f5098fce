#pragma once

// Fourier coefficients of the level-one weight-12 cusp form Delta and of its
// symmetric-power lifts to GL(n).

#include <complex>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace resonance::forms {

using int128 = __int128;

// Exact Ramanujan tau values tau(1..n_max).
class TauTable {
 public:
  static constexpr std::uint64_t kMaxSize = 2'000'000;

  TauTable() = default;
  TauTable(std::uint64_t n_max, std::vector<int128> values);

  std::uint64_t n_max() const noexcept { return n_max_; }
  // 1-based: tau(1) == 1.
  int128 operator()(std::uint64_t m) const { return values_[m - 1]; }
  std::span<const int128> values() const noexcept { return values_; }

 private:
  std::uint64_t n_max_ = 0;
  std::vector<int128> values_;
};

// Builds tau(m), m <= n_max, from Delta = q * (eta^3)^8 where eta^3 is the
// Jacobi series sum_k (-1)^k (2k+1) q^{k(k+1)/2}. Throws RangeError for n_max
// outside [1, 2e6] and OverflowError naming the index if an accumulator would
// leave the 128-bit range.
TauTable tau_table(std::uint64_t n_max);

// Binary cache: "TAU1", u64 n_max (little-endian), n_max little-endian i128.
void write_tau_cache(const TauTable& table, const std::filesystem::path& path);
TauTable read_tau_cache(const std::filesystem::path& path);

// Reads the cache when it exists and is long enough, otherwise builds the
// table and (re)writes the cache. An empty path disables caching.
TauTable load_or_build_tau(std::uint64_t n_max, const std::filesystem::path& cache);

// Normalized Hecke eigenvalues a(m) = tau(m) / m^{(kappa-1)/2}.
struct Gl2EigenSeries {
  int kappa = 12;
  std::vector<double> a;  // a[0] unused, a[1] == 1

  std::uint64_t n_max() const noexcept { return a.empty() ? 0 : a.size() - 1; }
  double operator()(std::uint64_t m) const { return a[m]; }
};

// Only kappa == 12 is modelled; other weights raise UnsupportedError.
Gl2EigenSeries normalize_gl2(const TauTable& t, int kappa = 12);

// The unit-modulus alpha with alpha + 1/alpha == a_p and Im(alpha) >= 0.
// |a_p| > 2 raises DomainError.
std::complex<double> satake_parameter(double a_p);

// A(m, 1, ..., 1) for m <= n_max of a GL(n) form.
class CoefficientTable {
 public:
  CoefficientTable() = default;
  CoefficientTable(int n_rank, std::vector<double> values, bool self_dual);

  int n_rank() const noexcept { return n_rank_; }
  std::uint64_t n_max() const noexcept { return values_.empty() ? 0 : values_.size() - 1; }
  bool self_dual() const noexcept { return self_dual_; }

  // 1-based; index 0 holds 0 so that spans line up with m.
  double operator()(std::uint64_t m) const { return values_[m]; }
  std::span<const double> values() const noexcept { return values_; }

  // A table with every coefficient equal to 1 (A(1) == 1 still holds).
  static CoefficientTable unit(int n_rank, std::uint64_t n_max);

 private:
  int n_rank_ = 2;
  std::vector<double> values_;
  bool self_dual_ = true;
};

// Complete homogeneous symmetric polynomial h_k of the given parameters, for
// k = 0..k_max, via the Newton-type recursion on elementary symmetric
// polynomials.
std::vector<std::complex<double>> complete_homogeneous(
    std::span<const std::complex<double>> params, int k_max);

// GL(n) Satake parameters alpha^{n-1}, alpha^{n-3}, ..., alpha^{1-n}.
std::vector<std::complex<double>> sym_power_parameters(std::complex<double> alpha, int n_rank);

// Smallest prime factor for 0..n (spf[0] = spf[1] = 0).
std::vector<std::uint32_t> smallest_prime_factors(std::uint64_t n);

// Coefficients of sym^{n-1} of the GL(2) series, n in {2, 3, 4}.
CoefficientTable sym_lift_table(const Gl2EigenSeries& g, int n_rank, std::uint64_t n_max);

// A(1, ..., 1, m). Only self-dual tables are supported.
CoefficientTable dual_table(const CoefficientTable& t);

// x^{-1} sum_{m <= x} |A(m, 1, ..., 1)|^2.
double rankin_selberg_ratio(const CoefficientTable& t, std::uint64_t x);

struct ThetaBound {
  int n_rank = 2;
  std::int64_t num = 0;
  std::int64_t den = 1;
  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
};

// Admissible exponent in A(m) << m^{theta + eps} for Maass forms on GL(n).
ThetaBound theta_bound(int n_rank);

// Exact exponent 0 for holomorphic GL(2) forms.
inline ThetaBound theta_bound_holomorphic() { return {2, 0, 1}; }

}  // namespace resonance::forms

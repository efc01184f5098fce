#include "resonance/forms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <numeric>
#include <string>

#include "resonance/errors.hpp"

namespace resonance::forms {

namespace {

using uint128 = unsigned __int128;

uint128 abs128(int128 v) { return v < 0 ? uint128(0) - uint128(v) : uint128(v); }

struct SparseTerm {
  std::uint64_t exponent;
  std::int64_t coefficient;
};

// eta(q)^3 / q^{1/8} = sum_{k>=0} (-1)^k (2k+1) q^{k(k+1)/2}
std::vector<SparseTerm> jacobi_eta_cubed(std::uint64_t length) {
  std::vector<SparseTerm> terms;
  for (std::uint64_t k = 0;; ++k) {
    const std::uint64_t e = k * (k + 1) / 2;
    if (e >= length) break;
    const auto c = static_cast<std::int64_t>(2 * k + 1);
    terms.push_back({e, (k % 2 == 0) ? c : -c});
  }
  return terms;
}

// out = dense * sparse, truncated to dense.size() coefficients. The result
// index q^j corresponds to tau(j + 1) once the eighth power is reached.
std::vector<int128> multiply_sparse(const std::vector<int128>& dense,
                                    const std::vector<SparseTerm>& sparse) {
  const std::size_t len = dense.size();
  std::vector<int128> out(len, 0);

  uint128 max_dense = 0;
  for (int128 v : dense) max_dense = std::max(max_dense, abs128(v));
  uint128 sparse_l1 = 0;
  for (const auto& t : sparse) sparse_l1 += static_cast<uint128>(std::abs(t.coefficient));

  // Every partial sum is bounded by max|dense| * sum|sparse|.
  const uint128 limit = uint128(1) << 126;
  const bool safe = max_dense == 0 || sparse_l1 <= limit / max_dense;

  if (safe) {
    for (const auto& t : sparse) {
      const int128 c = t.coefficient;
      const std::size_t shift = t.exponent;
      int128* dst = out.data() + shift;
      const int128* src = dense.data();
      const std::size_t count = len - shift;
      for (std::size_t j = 0; j < count; ++j) dst[j] += c * src[j];
    }
    return out;
  }

  for (const auto& t : sparse) {
    const int128 c = t.coefficient;
    for (std::size_t j = t.exponent; j < len; ++j) {
      int128 prod;
      if (__builtin_mul_overflow(c, dense[j - t.exponent], &prod) ||
          __builtin_add_overflow(out[j], prod, &out[j])) {
        throw OverflowError("tau_table: 128-bit overflow while accumulating tau(" +
                            std::to_string(j + 1) + ")");
      }
    }
  }
  return out;
}

void put_u64(std::ostream& os, std::uint64_t v) {
  std::array<char, 8> b{};
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  os.write(b.data(), b.size());
}

std::uint64_t get_u64(std::istream& is) {
  std::array<unsigned char, 8> b{};
  is.read(reinterpret_cast<char*>(b.data()), b.size());
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

}  // namespace

TauTable::TauTable(std::uint64_t n_max, std::vector<int128> values)
    : n_max_(n_max), values_(std::move(values)) {
  if (values_.size() != n_max_) throw RangeError("TauTable: value count does not match n_max");
}

TauTable tau_table(std::uint64_t n_max) {
  if (n_max < 1 || n_max > TauTable::kMaxSize) {
    throw RangeError("tau_table: n_max must lie in [1, 2e6], got " + std::to_string(n_max));
  }
  const auto eta3 = jacobi_eta_cubed(n_max);

  // (eta^3)^2 is produced by one sparse product on the dense copy of eta^3.
  std::vector<int128> power(n_max, 0);
  for (const auto& t : eta3) power[t.exponent] = t.coefficient;
  for (int k = 2; k <= 8; ++k) power = multiply_sparse(power, eta3);

  return TauTable(n_max, std::move(power));
}

void write_tau_cache(const TauTable& table, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw RangeError("write_tau_cache: cannot open " + path.string());
  os.write("TAU1", 4);
  put_u64(os, table.n_max());
  std::array<char, 16> b{};
  for (int128 v : table.values()) {
    const auto u = static_cast<uint128>(v);
    for (int i = 0; i < 16; ++i) b[i] = static_cast<char>((u >> (8 * i)) & 0xff);
    os.write(b.data(), b.size());
  }
  if (!os) throw RangeError("write_tau_cache: write failed for " + path.string());
}

TauTable read_tau_cache(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw RangeError("read_tau_cache: cannot open " + path.string());
  std::array<char, 4> magic{};
  is.read(magic.data(), magic.size());
  if (!is || std::string(magic.data(), 4) != "TAU1") {
    throw RangeError("read_tau_cache: bad magic in " + path.string());
  }
  const std::uint64_t n_max = get_u64(is);
  if (!is || n_max < 1 || n_max > TauTable::kMaxSize) {
    throw RangeError("read_tau_cache: bad header in " + path.string());
  }
  std::vector<int128> values(n_max);
  std::array<unsigned char, 16> b{};
  for (auto& v : values) {
    is.read(reinterpret_cast<char*>(b.data()), b.size());
    uint128 u = 0;
    for (int i = 0; i < 16; ++i) u |= static_cast<uint128>(b[i]) << (8 * i);
    v = static_cast<int128>(u);
  }
  if (!is) throw RangeError("read_tau_cache: truncated file " + path.string());
  return TauTable(n_max, std::move(values));
}

TauTable load_or_build_tau(std::uint64_t n_max, const std::filesystem::path& cache) {
  if (!cache.empty() && std::filesystem::exists(cache)) {
    try {
      TauTable cached = read_tau_cache(cache);
      if (cached.n_max() >= n_max) {
        std::vector<int128> head(cached.values().begin(), cached.values().begin() + n_max);
        return TauTable(n_max, std::move(head));
      }
    } catch (const RangeError&) {
      // unreadable cache: rebuild below
    }
  }
  TauTable table = tau_table(n_max);
  if (!cache.empty()) write_tau_cache(table, cache);
  return table;
}

Gl2EigenSeries normalize_gl2(const TauTable& t, int kappa) {
  if (kappa != 12) {
    throw UnsupportedError("normalize_gl2: only weight 12 (Delta) is built in");
  }
  Gl2EigenSeries g;
  g.kappa = kappa;
  g.a.assign(t.n_max() + 1, 0.0);
  const long double half = (kappa - 1) / 2.0L;
  for (std::uint64_t m = 1; m <= t.n_max(); ++m) {
    const auto tau = static_cast<long double>(t(m));
    g.a[m] = static_cast<double>(tau / std::pow(static_cast<long double>(m), half));
  }
  return g;
}

std::complex<double> satake_parameter(double a_p) {
  constexpr double kSlack = 1e-12;
  if (!(std::abs(a_p) <= 2.0 + kSlack)) {
    throw DomainError("satake_parameter: |a_p| > 2 (" + std::to_string(a_p) + ")");
  }
  const double c = std::clamp(a_p / 2.0, -1.0, 1.0);
  return {c, std::sqrt(std::max(0.0, 1.0 - c * c))};
}

CoefficientTable::CoefficientTable(int n_rank, std::vector<double> values, bool self_dual)
    : n_rank_(n_rank), values_(std::move(values)), self_dual_(self_dual) {
  if (n_rank_ < 2) throw DomainError("CoefficientTable: n_rank must be >= 2");
  if (values_.size() < 2) throw RangeError("CoefficientTable: empty table");
  values_[0] = 0.0;
}

CoefficientTable CoefficientTable::unit(int n_rank, std::uint64_t n_max) {
  return CoefficientTable(n_rank, std::vector<double>(n_max + 1, 1.0), true);
}

std::vector<std::complex<double>> complete_homogeneous(
    std::span<const std::complex<double>> params, int k_max) {
  const int n = static_cast<int>(params.size());
  // e[0..n] from prod (1 + x_i t)
  std::vector<std::complex<double>> e(n + 1, 0.0);
  e[0] = 1.0;
  for (const auto& x : params) {
    for (int i = n; i >= 1; --i) e[i] += x * e[i - 1];
  }
  std::vector<std::complex<double>> h(k_max + 1, 0.0);
  h[0] = 1.0;
  for (int k = 1; k <= k_max; ++k) {
    std::complex<double> acc = 0.0;
    for (int i = 1; i <= std::min(k, n); ++i) {
      const double sign = (i % 2 == 1) ? 1.0 : -1.0;
      acc += sign * e[i] * h[k - i];
    }
    h[k] = acc;
  }
  return h;
}

std::vector<std::complex<double>> sym_power_parameters(std::complex<double> alpha, int n_rank) {
  std::vector<std::complex<double>> p;
  p.reserve(n_rank);
  for (int j = n_rank - 1; j >= 1 - n_rank; j -= 2) p.push_back(std::pow(alpha, j));
  return p;
}

std::vector<std::uint32_t> smallest_prime_factors(std::uint64_t n) {
  std::vector<std::uint32_t> spf(n + 1, 0);
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (spf[i] != 0) continue;
    spf[i] = static_cast<std::uint32_t>(i);
    for (std::uint64_t j = i * i; j <= n; j += i) {
      if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
    }
  }
  return spf;
}

CoefficientTable sym_lift_table(const Gl2EigenSeries& g, int n_rank, std::uint64_t n_max) {
  if (n_rank < 2 || n_rank > 4) {
    throw UnsupportedError("sym_lift_table: n_rank must be 2, 3 or 4");
  }
  if (n_max > g.n_max()) throw RangeError("sym_lift_table: n_max exceeds the GL(2) series");
  if (n_max < 1) throw RangeError("sym_lift_table: n_max must be positive");

  if (n_rank == 2) {
    return CoefficientTable(2, std::vector<double>(g.a.begin(), g.a.begin() + n_max + 1), true);
  }

  const auto spf = smallest_prime_factors(n_max);
  std::vector<double> A(n_max + 1, 0.0);
  A[1] = 1.0;
  for (std::uint64_t m = 2; m <= n_max; ++m) {
    const std::uint64_t p = spf[m];
    if (p == m) {
      // First visit of p: fill every p^k <= n_max.
      int k_max = 0;
      for (std::uint64_t q = p; q <= n_max; q *= p) {
        ++k_max;
        if (q > n_max / p) break;
      }
      const auto params = sym_power_parameters(satake_parameter(g(p)), n_rank);
      const auto h = complete_homogeneous(params, k_max);
      std::uint64_t q = p;
      for (int k = 1; k <= k_max; ++k, q *= p) A[q] = h[k].real();
      continue;
    }
    std::uint64_t rest = m;
    std::uint64_t pk = 1;
    while (rest % p == 0) {
      rest /= p;
      pk *= p;
    }
    if (rest == 1) continue;  // prime power, already filled
    A[m] = A[pk] * A[rest];
  }
  return CoefficientTable(n_rank, std::move(A), true);
}

CoefficientTable dual_table(const CoefficientTable& t) {
  if (!t.self_dual()) {
    throw UnsupportedError("dual_table: non-self-dual forms are not modelled");
  }
  return t;
}

double rankin_selberg_ratio(const CoefficientTable& t, std::uint64_t x) {
  if (x < 1 || x > t.n_max()) throw RangeError("rankin_selberg_ratio: x outside table");
  double sum = 0.0;
  double comp = 0.0;
  for (std::uint64_t m = 1; m <= x; ++m) {
    const double v = t(m) * t(m);
    const double y = v - comp;
    const double s = sum + y;
    comp = (s - sum) - y;
    sum = s;
  }
  return sum / static_cast<double>(x);
}

ThetaBound theta_bound(int n_rank) {
  switch (n_rank) {
    case 2: return {2, 7, 64};
    case 3: return {3, 5, 14};
    case 4: return {4, 9, 22};
    default: break;
  }
  if (n_rank < 2) throw DomainError("theta_bound: n_rank must be >= 2");
  // 1/2 - 2/(n^2 + 1) = (n^2 - 3) / (2 n^2 + 2)
  const std::int64_t n2 = static_cast<std::int64_t>(n_rank) * n_rank;
  std::int64_t num = n2 - 3;
  std::int64_t den = 2 * n2 + 2;
  const std::int64_t g = std::gcd(num, den);
  return {n_rank, num / g, den / g};
}

}  // namespace resonance::forms

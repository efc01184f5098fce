#pragma once

// Short twisted exponential sums of GL(n) coefficients.

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "resonance/forms.hpp"
#include "resonance/weights.hpp"

namespace resonance::sums {

using cplx = std::complex<double>;

enum class Twist {
  none,       // e(0)
  linear,     // e(d^{1/n} m / M^{1 - 1/n})
  nonlinear,  // e(n d^{1/n} m^{1/n}), the conjugate of the dual-side phase at m = d
};

// Terms are summed in chunks of this many indices; each chunk is compensated
// and the chunk totals are combined by a fixed pairwise tree, so the result
// does not depend on the thread count.
inline constexpr std::int64_t kChunk = 4096;

struct SumSpec {
  const forms::CoefficientTable* table = nullptr;
  double M = 1.0;
  double Delta = 1.0;
  std::int64_t d = 1;
  Twist twist = Twist::linear;
  std::optional<weights::WeightSpec> weight;
};

struct SumResult {
  cplx value;
  std::int64_t terms = 0;
  double abs_sum = 0.0;             // sum |term|
  double accumulation_error = 0.0;  // bound on the summation error
};

// Sum over integers m in [M, M + Delta], both ends inclusive.
SumResult exp_sum(const SumSpec& spec, int threads = 1);

// Twist phase for index m as a fraction in [0, 1).
double twist_phase(Twist twist, double M, std::int64_t d, int n, std::int64_t m);

// e(x) with x reduced mod 1 first.
cplx unit_phase(double x);

// sum_{0 <= h < Delta} e(theta h)
cplx geometric_sum(std::int64_t Delta, double theta);
cplx geometric_sum_direct(std::int64_t Delta, double theta);

// Window length U = ceil(M^{1 - 1/(2n)}) used by windowed_plain_sums.
std::int64_t window_span(double M, int n);

// For t = ceil(M), ..., ceil(M) + U: sum_{t <= m <= t + Delta - 1} A(m) c(m),
// where c == 1 for twist_d == 0 and the linear twist with d = twist_d
// otherwise. Updated by a sliding window.
std::vector<cplx> windowed_plain_sums(const forms::CoefficientTable& table, double M,
                                      std::int64_t Delta, std::int64_t twist_d);

}  // namespace resonance::sums

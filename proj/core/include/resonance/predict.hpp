#pragma once

// Resonance main terms, magnitude laws and the first-derivative bound probe.

#include <complex>
#include <cstdint>

#include "resonance/forms.hpp"
#include "resonance/weights.hpp"

namespace resonance::predict {

using cplx = std::complex<double>;

enum class Phase {
  none,
  // d^{1/n} x / M^{1 - 1/n} - n x^{1/n} m^{1/n}; resonant when m == d.
  linear_resonant,
};

struct IntegralSpec {
  double amplitude_exponent = 0.0;  // x^{amplitude_exponent}, in (-1/2, 0]
  Phase phase = Phase::none;
  std::int64_t d = 1;
  std::int64_t dual_m = 1;
  double M = 1.0;
  int n = 2;
  weights::WeightSpec weight;

  static IntegralSpec resonant(const weights::WeightSpec& w, std::int64_t d, int n);
};

// Phase of the integrand at x (in cycles, not reduced).
double integral_phase(const IntegralSpec& spec, double x);

// Adaptive composite Gauss-Legendre: at least 20 (1 + total phase variation)
// nodes, panels doubled until successive values agree to 1e-8 relative.
cplx oscillatory_integral(const IntegralSpec& spec);

struct MainTermResult {
  cplx value;
  cplx integral;
  cplx constant;
  double error_budget = 0.0;
};

// A(1,...,1,d) d^{1/(2n) - 1/2} n^{-1/2} e((n+3)/8)
cplx resonance_constant(double A1d, std::int64_t d, int n);

// C with error budget C Delta M^{-1/2 - 1/(2n)}; fitted per rank.
double error_budget_constant(int n);

MainTermResult main_term_linear(const forms::CoefficientTable& table_dual, double M, double Delta,
                                std::int64_t d, int n, const weights::WeightSpec& w);
MainTermResult main_term_nonlinear(const forms::CoefficientTable& table_dual, double M, double Delta,
                                   std::int64_t d, int n, const weights::WeightSpec& w);

struct MagnitudePrediction {
  double value = 0.0;
  bool non_oscillating = true;  // Delta below M^{1 - 1/(2n)}
};

// |A1d| d^{1/(2n) - 1/2} n^{-1/2} Delta M^{1/(2n) - 1/2} below the regime
// boundary, the same prefactor times M^{1/2} above it.
MagnitudePrediction magnitude_prediction(double M, double Delta, std::int64_t d, int n, double A1d);

// Catalog case: amplitude w(x) x^{1/(2n) - 1/2} with a bump w on
// [M, M + Delta], phase linear_resonant with twist d and dual index m.
struct JmCase {
  int n = 2;
  std::int64_t d = 1;
  std::int64_t m = 2;
  double M = 1e6;
  double Delta = 1e4;
  int P = 2;
  double rho = 0.0;  // 0 selects M / 2
};

struct JmProbe {
  double lhs = 0.0;
  double rhs = 0.0;
  double G0 = 0.0;
  double G1 = 0.0;
  double F1 = 0.0;
  double rho = 0.0;
  double ratio() const { return lhs / rhs; }
};

// G0 (G1 F1)^{-P} (1 + G1 / rho)^P (b - a)
double jm_rhs(double G0, double G1, double F1, double rho, int P, double length);

JmProbe jm_bound_probe(const JmCase& c);

}  // namespace resonance::predict

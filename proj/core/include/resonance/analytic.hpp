#pragma once

// Gamma machinery, Bessel functions, the leading-order Voronoi kernel and a
// Mellin-Barnes evaluation of the dual-side integral Omega(y).

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "resonance/weights.hpp"

namespace resonance::analytic {

using cplx = std::complex<double>;

// Principal-branch log Gamma. Non-positive integers raise PoleError.
cplx complex_log_gamma(cplx s);

// Gamma(s) ~ sqrt(2 pi) exp((s - 1/2) log s - s) (1 + sum_k a_k s^-k).
struct StirlingExpansion {
  int order = 0;
  std::vector<double> coefficients;  // a_1 .. a_order

  explicit StirlingExpansion(int K);
  cplx evaluate(cplx s) const;
};

// K-term Stirling value of Gamma(s); needs |s| >= 5 and |arg s| <= pi - 0.1.
cplx stirling_eval(cplx s, int K);

struct SpectralParams {
  int n_rank = 2;
  std::vector<cplx> lambda;
  std::vector<cplx> lambda_dual;

  // Throws ConfigError unless sizes match n_rank, both sums vanish and every
  // real part is at most 1/2.
  void validate() const;
  bool real() const;

  static SpectralParams zero(int n_rank);
};

// log of prod_l Gamma((1 - s - dual_l)/2) / Gamma((s - l)/2)
cplx log_gamma_quotient(cplx s, const SpectralParams& p);
cplx gamma_quotient(cplx s, const SpectralParams& p);

// n^{ns - n/2} Gamma((1 - ns)/2) / Gamma((ns - (n-1))/2)
cplx log_reduced_quotient(cplx s, int n);
cplx reduced_quotient(cplx s, int n);

// gamma_quotient / reduced_quotient - 1, for |s| >= 5.
cplx h_correction(cplx s, const SpectralParams& p);

// J_nu(x) for x > 0, nu >= -10.
double bessel_j(double nu, double x);
// The two branches, exposed for cross-checks.
double bessel_j_series(double nu, double x);
double bessel_j_asymptotic(double nu, double x);

struct KernelValue {
  double x = 0.0;
  double y = 0.0;
  cplx value;
  int truncation_order = 0;
  double error_bound = 0.0;
};

// c_0^+ of the leading kernel term; c_0^- is its conjugate.
cplx kernel_constant(int n);
// Constant C in error_bound = C (xy)^{-1/n}.
double kernel_error_constant(int n);

// c_0^+ e(n (xy)^{1/n} / pi) + c_0^- e(-n (xy)^{1/n} / pi), xy >= 1.
KernelValue kernel_leading(double x, double y, int n);

// A real test function supported in [a, b].
struct TestFunction {
  double a = 1.0;
  double b = 2.0;
  std::function<double(double)> eval;
};

TestFunction from_weight(const weights::WeightSpec& w, double scale = 1.0);

// y^{1/2 + 1/(2n)} int f(x) x^{1/(2n) - 1/2} K(x, y) dx with the leading kernel.
double kernel_form(const TestFunction& f, double y, int n);

// Residue-series term Omega_{nu,0}(y) written with J_{nu - n/2}.
double omega_bessel(const TestFunction& f, double y, int n, int nu);
double omega_bessel(const weights::WeightSpec& f, double y, int n, int nu);

struct MellinContourSpec {
  double sigma0 = -0.25;  // integrate along Re s = -sigma0
  double T = 60.0;        // minimum height; extended until the tail is negligible
  double density = 40.0;  // nodes per unit height
  double tolerance = 1e-10;  // accepted tail, relative to the integrand peak

  void validate() const;
};

struct ContourResult {
  cplx value;
  double tail_estimate = 0.0;
  double height = 0.0;
  std::int64_t nodes = 0;
};

// (1/2 pi i) int_{(-sigma0)} f~(s) pi^{-n/2} G~(1-s)/G(s) y^s ds.
ContourResult omega_contour(const TestFunction& f, double y, const SpectralParams& p,
                            const MellinContourSpec& spec = {});
ContourResult omega_contour(const weights::WeightSpec& f, double y, const SpectralParams& p,
                            const MellinContourSpec& spec = {});

}  // namespace resonance::analytic

#include "resonance/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "resonance/errors.hpp"
#include "resonance/quadrature.hpp"

namespace resonance::analytic {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPoleGap = 1e-6;

// B_0 .. B_max from sum_{k<m} C(m+1, k) B_k = -(m+1) B_m.
std::vector<long double> bernoulli_numbers(int max) {
  std::vector<long double> b(max + 1, 0.0L);
  b[0] = 1.0L;
  for (int m = 1; m <= max; ++m) {
    long double acc = 0.0L;
    long double binom = 1.0L;  // C(m+1, k)
    for (int k = 0; k < m; ++k) {
      acc += binom * b[k];
      binom = binom * static_cast<long double>(m + 1 - k) / static_cast<long double>(k + 1);
    }
    b[m] = -acc / static_cast<long double>(m + 1);
  }
  return b;
}

const std::vector<long double>& bernoulli() {
  static const std::vector<long double> b = bernoulli_numbers(40);
  return b;
}

// log Gamma(z) for Re z large: Stirling log series with ten correction terms.
cplx log_gamma_large(cplx z) {
  const auto& b = bernoulli();
  const cplx inv = 1.0 / z;
  const cplx inv2 = inv * inv;
  cplx corr = 0.0;
  cplx power = inv;
  for (int k = 1; k <= 10; ++k) {
    corr += static_cast<double>(b[2 * k] / (2.0L * k * (2.0L * k - 1.0L))) * power;
    power *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + corr;
}

void check_pole(cplx z, const char* where) {
  if (z.real() > 0.5) return;
  const double k = std::round(z.real());
  if (std::abs(z - cplx(k, 0.0)) < kPoleGap) {
    throw PoleError(std::string(where) + ": argument within 1e-6 of a Gamma pole");
  }
}

cplx expm1(cplx z) {
  const double x = z.real();
  const double y = z.imag();
  const double s = std::sin(0.5 * y);
  return {std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y)};
}

// e(u) = exp(2 pi i u) with the integer part removed first.
cplx unit_phase(double u) {
  u -= std::floor(u);
  return std::polar(1.0, 2.0 * kPi * u);
}

}  // namespace

cplx complex_log_gamma(cplx s) {
  if (s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::floor(s.real())) {
    throw PoleError("complex_log_gamma: pole at non-positive integer");
  }
  constexpr double kShift = 15.0;
  if (s.real() >= kShift) return log_gamma_large(s);
  const auto steps = static_cast<std::int64_t>(std::ceil(kShift - s.real()));
  // log Gamma(s) = log Gamma(s + N) - sum_{k<N} log(s + k)
  cplx logs = 0.0;
  cplx comp = 0.0;
  for (std::int64_t k = 0; k < steps; ++k) {
    const cplx term = std::log(s + static_cast<double>(k)) - comp;
    const cplx next = logs + term;
    comp = (next - logs) - term;
    logs = next;
  }
  return log_gamma_large(s + static_cast<double>(steps)) - logs;
}

StirlingExpansion::StirlingExpansion(int K) : order(K) {
  if (K < 0) throw DomainError("StirlingExpansion: order must be >= 0");
  // exp(sum_j B_2j / (2j (2j-1)) w^{2j-1}) = 1 + sum_k a_k w^k
  const auto& b = bernoulli();
  const int need = std::max(K, 1);
  if (need + 1 >= static_cast<int>(b.size())) throw DomainError("StirlingExpansion: order too large");
  std::vector<long double> l(need + 1, 0.0L);
  for (int i = 1; i <= need; i += 2) {
    const int j = (i + 1) / 2;
    l[i] = b[2 * j] / (2.0L * j * (2.0L * j - 1.0L));
  }
  std::vector<long double> e(need + 1, 0.0L);
  e[0] = 1.0L;
  for (int k = 1; k <= need; ++k) {
    long double acc = 0.0L;
    for (int i = 1; i <= k; ++i) acc += static_cast<long double>(i) * l[i] * e[k - i];
    e[k] = acc / static_cast<long double>(k);
  }
  coefficients.assign(K, 0.0);
  for (int k = 1; k <= K; ++k) coefficients[k - 1] = static_cast<double>(e[k]);
}

cplx StirlingExpansion::evaluate(cplx s) const {
  cplx series = 1.0;
  cplx power = 1.0;
  for (int k = 0; k < order; ++k) {
    power /= s;
    series += coefficients[k] * power;
  }
  return std::sqrt(2.0 * kPi) * std::exp((s - 0.5) * std::log(s) - s) * series;
}

cplx stirling_eval(cplx s, int K) {
  if (std::abs(s) < 5.0) throw DomainError("stirling_eval: |s| must be at least 5");
  if (std::abs(std::arg(s)) > kPi - 0.1) throw DomainError("stirling_eval: s outside the sector |arg s| <= pi - 0.1");
  return StirlingExpansion(K).evaluate(s);
}

void SpectralParams::validate() const {
  if (n_rank < 1) throw ConfigError("SpectralParams: n_rank must be positive");
  if (static_cast<int>(lambda.size()) != n_rank || static_cast<int>(lambda_dual.size()) != n_rank) {
    throw ConfigError("SpectralParams: expected n_rank spectral parameters on each side");
  }
  cplx sum = 0.0;
  cplx sum_dual = 0.0;
  for (int l = 0; l < n_rank; ++l) {
    sum += lambda[l];
    sum_dual += lambda_dual[l];
    if (lambda[l].real() > 0.5 || lambda_dual[l].real() > 0.5) {
      throw ConfigError("SpectralParams: Re lambda must not exceed 1/2");
    }
  }
  if (std::abs(sum) > 1e-12 || std::abs(sum_dual) > 1e-12) {
    throw ConfigError("SpectralParams: spectral parameters must sum to zero");
  }
}

bool SpectralParams::real() const {
  auto is_real = [](const std::vector<cplx>& v) {
    return std::all_of(v.begin(), v.end(), [](cplx z) { return z.imag() == 0.0; });
  };
  return is_real(lambda) && is_real(lambda_dual);
}

SpectralParams SpectralParams::zero(int n_rank) {
  return {n_rank, std::vector<cplx>(n_rank, 0.0), std::vector<cplx>(n_rank, 0.0)};
}

cplx log_gamma_quotient(cplx s, const SpectralParams& p) {
  p.validate();
  cplx acc = 0.0;
  for (int l = 0; l < p.n_rank; ++l) {
    const cplx num = 0.5 * (1.0 - s - p.lambda_dual[l]);
    const cplx den = 0.5 * (s - p.lambda[l]);
    check_pole(num, "gamma_quotient");
    check_pole(den, "gamma_quotient");
    acc += complex_log_gamma(num) - complex_log_gamma(den);
  }
  return acc;
}

cplx gamma_quotient(cplx s, const SpectralParams& p) { return std::exp(log_gamma_quotient(s, p)); }

cplx log_reduced_quotient(cplx s, int n) {
  if (n < 1) throw DomainError("reduced_quotient: n must be positive");
  const double nd = n;
  const cplx num = 0.5 * (1.0 - nd * s);
  const cplx den = 0.5 * (nd * s - (nd - 1.0));
  check_pole(num, "reduced_quotient");
  check_pole(den, "reduced_quotient");
  return (nd * s - 0.5 * nd) * std::log(nd) + complex_log_gamma(num) - complex_log_gamma(den);
}

cplx reduced_quotient(cplx s, int n) { return std::exp(log_reduced_quotient(s, n)); }

cplx h_correction(cplx s, const SpectralParams& p) {
  if (std::abs(s) < 5.0) throw DomainError("h_correction: |s| must be at least 5");
  return expm1(log_gamma_quotient(s, p) - log_reduced_quotient(s, p.n_rank));
}

double bessel_j_series(double nu, double x) {
  if (nu < 0.0 && nu == std::floor(nu)) {
    const double m = -nu;
    const double v = bessel_j_series(m, x);
    return std::fmod(m, 2.0) == 0.0 ? v : -v;
  }
  const long double half = 0.5L * static_cast<long double>(x);
  const long double q = -half * half;
  const long double lnu = nu;
  long double term = std::pow(half, lnu) / std::tgamma(lnu + 1.0L);
  long double sum = term;
  for (int k = 1; k < 1000; ++k) {
    term *= q / (static_cast<long double>(k) * (static_cast<long double>(k) + lnu));
    sum += term;
    if (k > half && std::fabs(term) <= 1e-21L * std::fabs(sum)) break;
  }
  return static_cast<double>(sum);
}

double bessel_j_asymptotic(double nu, double x) {
  const double mu = 4.0 * nu * nu;
  double p = 0.0;
  double q = 0.0;
  double term = 1.0;  // a_k(nu) / x^k
  double prev = INFINITY;
  for (int k = 0; k < 60; ++k) {
    if (k > 0) {
      const double odd = 2.0 * k - 1.0;
      term *= (mu - odd * odd) / (8.0 * k * x);
    }
    const double mag = std::abs(term);
    if (k >= 6 && mag > prev) break;
    switch (k % 4) {
      case 0: p += term; break;
      case 1: q += term; break;
      case 2: p -= term; break;
      default: q -= term; break;
    }
    if (mag == 0.0 || mag < 1e-17 * std::max(std::abs(p), 1e-300)) break;
    prev = mag;
  }
  const double chi = x - (0.5 * nu + 0.25) * kPi;
  return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

double bessel_j(double nu, double x) {
  if (!(x > 0.0)) throw DomainError("bessel_j: x must be positive");
  if (nu < -10.0) throw DomainError("bessel_j: order below -10");
  if (x <= std::max(20.0, 0.5 * nu * nu)) return bessel_j_series(nu, x);
  return bessel_j_asymptotic(nu, x);
}

cplx kernel_constant(int n) {
  const double nd = n;
  return std::pow(kPi, -0.5 * (nd + 1.0)) / std::sqrt(nd) * unit_phase((nd - 1.0) / 8.0);
}

double kernel_error_constant(int n) {
  // Four times the first Hankel correction of J_{-n/2}, in units of 2|c_0|.
  const double nd = n;
  return 2.0 * std::abs(kernel_constant(n)) * (nd * nd - 1.0) / (4.0 * nd);
}

KernelValue kernel_leading(double x, double y, int n) {
  if (n < 1) throw DomainError("kernel_leading: n must be positive");
  if (!(x > 0.0) || !(y > 0.0) || x * y < 1.0) throw DomainError("kernel_leading: need x, y > 0 and xy >= 1");
  const double nd = n;
  const double root = std::pow(x * y, 1.0 / nd);
  const cplx c = kernel_constant(n);
  // c e^{iz} + conj(c) e^{-iz}, z = 2 n (xy)^{1/n}
  const double z = 2.0 * nd * root;
  const double value = 2.0 * std::abs(c) * std::cos(z + std::arg(c));
  return {x, y, cplx(value, 0.0), 0, kernel_error_constant(n) / root};
}

TestFunction from_weight(const weights::WeightSpec& w, double scale) {
  return {w.lower(), w.upper(), [w, scale](double x) { return scale * weights::eval_weight(w, x); }};
}

namespace {

// Integrates g over [a, b] with panels tied to the number of cycles of
// z(x) = 2 n (xy)^{1/n}.
template <class G>
double oscillatory_real(G&& g, double a, double b, double y, int n, const char* where) {
  const double nd = n;
  const double cycles = 2.0 * nd * (std::pow(b * y, 1.0 / nd) - std::pow(a * y, 1.0 / nd)) / (2.0 * kPi);
  const auto initial = static_cast<std::int64_t>(std::ceil(cycles)) + 8;
  double scale = 0.0;
  for (int i = 0; i <= 256; ++i) scale = std::max(scale, std::abs(g(a + (b - a) * i / 256.0)));
  const double floor = 1e-14 * scale * (b - a);
  auto r = quadrature::integrate_doubling(g, a, b, initial, 1e-10, floor, initial << 10);
  if (!r.converged) {
    throw AccuracyError(std::string(where) + ": quadrature did not converge", r.error_estimate);
  }
  return r.value;
}

}  // namespace

double kernel_form(const TestFunction& f, double y, int n) {
  const double nd = n;
  const double amp = 2.0 * std::abs(kernel_constant(n));
  const double shift = std::arg(kernel_constant(n));
  auto g = [&](double x) {
    const double fx = f.eval(x);
    if (fx == 0.0) return 0.0;
    const double z = 2.0 * nd * std::pow(x * y, 1.0 / nd);
    return fx * std::pow(x, 0.5 / nd - 0.5) * amp * std::cos(z + shift);
  };
  return std::pow(y, 0.5 + 0.5 / nd) * oscillatory_real(g, f.a, f.b, y, n, "kernel_form");
}

double omega_bessel(const TestFunction& f, double y, int n, int nu) {
  if (nu < 0) throw DomainError("omega_bessel: nu must be >= 0");
  if (!(f.a > 0.0) || !(f.b > f.a)) throw DomainError("omega_bessel: support must lie in (0, inf)");
  const double nd = n;
  const double order = nu - 0.5 * nd;
  const double power = (1.0 - nu) / nd - 0.5;
  auto g = [&](double x) {
    const double fx = f.eval(x);
    if (fx == 0.0) return 0.0;
    return fx * std::pow(x, power) * bessel_j(order, 2.0 * nd * std::pow(x * y, 1.0 / nd));
  };
  const double integral = oscillatory_real(g, f.a, f.b, y, n, "omega_bessel");
  return 2.0 * std::pow(kPi, -0.5 * nd) * std::pow(y, 0.5 + (1.0 - nu) / nd) * std::pow(nd, -nu) * integral;
}

double omega_bessel(const weights::WeightSpec& f, double y, int n, int nu) {
  return omega_bessel(from_weight(f), y, n, nu);
}

void MellinContourSpec::validate() const {
  if (!(T >= 10.0)) throw ConfigError("MellinContourSpec: T must be at least 10");
  if (!(density >= 20.0)) throw ConfigError("MellinContourSpec: density must be at least 20 nodes per unit");
  if (!(tolerance > 0.0)) throw ConfigError("MellinContourSpec: tolerance must be positive");
}

namespace {

// f~(sigma + i t) for every t in `ts`, by the trapezoid rule in v = log x.
// The rule is spectrally accurate for smooth compactly supported f as long as
// 2 pi / h stays well above the largest |t| plus the decay scale of f~.
void mellin_samples(const TestFunction& f, double sigma, const std::vector<double>& ts,
                    std::vector<cplx>& out) {
  const double va = std::log(f.a);
  const double vb = std::log(f.b);
  const double len = vb - va;
  double tmax = 0.0;
  for (double t : ts) tmax = std::max(tmax, std::abs(t));
  const double band = tmax + 2500.0 / len;
  const auto steps = std::max<std::int64_t>(256, static_cast<std::int64_t>(std::ceil(len * band / (2.0 * kPi))) + 1);
  const double h = len / static_cast<double>(steps);
  std::vector<double> g(steps + 1);
  for (std::int64_t j = 0; j <= steps; ++j) {
    const double v = va + h * static_cast<double>(j);
    g[j] = f.eval(std::exp(v)) * std::exp(sigma * v);
  }
  out.assign(ts.size(), 0.0);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double t = ts[i];
    const cplx step = std::polar(1.0, t * h);
    cplx acc = 0.0;
    cplx rot = 0.0;
    for (std::int64_t j = 0; j <= steps; ++j) {
      if ((j & 255) == 0) rot = std::polar(1.0, t * (va + h * static_cast<double>(j)));
      acc += g[j] * rot;
      rot *= step;
    }
    out[i] = h * acc;
  }
}

}  // namespace

ContourResult omega_contour(const TestFunction& f, double y, const SpectralParams& p,
                            const MellinContourSpec& spec) {
  spec.validate();
  p.validate();
  if (!(y >= 1.0)) throw DomainError("omega_contour: y must be at least 1");
  if (!(f.a > 0.0) || !(f.b > f.a)) throw DomainError("omega_contour: support must lie in (0, inf)");

  const double sigma = -spec.sigma0;
  const double nd = p.n_rank;
  const double log_y = std::log(y);
  const double pi_factor = std::pow(kPi, -0.5 * nd);
  const auto& rule = quadrature::gl20();
  const double width = static_cast<double>(rule.nodes.size()) / spec.density;
  // The integrand's mass sits around |t| = 2 (xy)^{1/n}.
  const double t_stationary = 2.0 * std::pow(f.b * y, 1.0 / nd);
  const double t_min = std::max(spec.T, 1.5 * t_stationary);
  const double t_cap = std::max(spec.T, 4.0 * t_stationary) + 4.0 * 2500.0 / std::log(f.b / f.a);
  const bool symmetric = p.real();

  ContourResult out;
  cplx total = 0.0;
  double peak = 0.0;
  std::vector<double> ts(rule.nodes.size());
  std::vector<cplx> ft;

  // Panels march outward from t = 0 on each side; quiet_run counts
  // consecutive panels whose integrand stays below the tolerance.
  for (int side : {1, -1}) {
    if (side == -1 && symmetric) break;
    double t0 = 0.0;
    int quiet_run = 0;
    const int quiet_needed = static_cast<int>(std::ceil(2.0 / width));
    cplx side_total = 0.0;
    double tail = 0.0;
    for (;;) {
      const double half = 0.5 * width;
      const double mid = side * (t0 + half);
      for (std::size_t i = 0; i < ts.size(); ++i) ts[i] = mid + half * rule.nodes[i];
      mellin_samples(f, sigma, ts, ft);
      double panel_max = 0.0;
      cplx panel = 0.0;
      for (std::size_t i = 0; i < ts.size(); ++i) {
        const cplx s(sigma, ts[i]);
        const cplx val = ft[i] * pi_factor * std::exp(log_gamma_quotient(s, p) + s * log_y);
        panel_max = std::max(panel_max, std::abs(val));
        panel += rule.weights[i] * val;
      }
      side_total += half * panel;
      out.nodes += static_cast<std::int64_t>(ts.size());
      peak = std::max(peak, panel_max);
      t0 += width;
      quiet_run = panel_max <= spec.tolerance * peak ? quiet_run + 1 : 0;
      if (t0 >= t_min && quiet_run >= quiet_needed) {
        tail = panel_max;
        break;
      }
      if (t0 >= t_cap) {
        throw AccuracyError("omega_contour: truncation tail above the requested tolerance",
                            panel_max / std::max(peak, 1e-300));
      }
    }
    out.height = std::max(out.height, t0);
    total += side_total;
    out.tail_estimate = std::max(out.tail_estimate, tail);
  }
  // ds = i dt, and 1/(2 pi i) i dt = dt / (2 pi).
  out.value = symmetric ? cplx(total.real() / kPi, 0.0) : total / (2.0 * kPi);
  out.tail_estimate /= kPi;
  return out;
}

ContourResult omega_contour(const weights::WeightSpec& f, double y, const SpectralParams& p,
                            const MellinContourSpec& spec) {
  return omega_contour(from_weight(f), y, p, spec);
}

}  // namespace resonance::analytic

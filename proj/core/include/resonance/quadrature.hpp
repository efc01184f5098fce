#pragma once

// Composite Gauss-Legendre quadrature with refinement by panel doubling.

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace resonance::quadrature {

struct GaussLegendre {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

// k-point rule; nodes from Newton iteration on P_k.
GaussLegendre gauss_legendre(int k);

// Shared 20-point rule.
const GaussLegendre& gl20();

// sum over `panels` equal panels of [a, b]
template <class F>
auto composite(F&& f, double a, double b, std::int64_t panels, const GaussLegendre& rule = gl20()) {
  using R = decltype(f(a));
  R total{};
  const double width = (b - a) / static_cast<double>(panels);
  const double half = 0.5 * width;
  for (std::int64_t p = 0; p < panels; ++p) {
    const double mid = a + (static_cast<double>(p) + 0.5) * width;
    R panel{};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      panel += rule.weights[i] * f(mid + half * rule.nodes[i]);
    }
    total += half * panel;
  }
  return total;
}

template <class R>
struct Result {
  R value{};
  double error_estimate = 0.0;  // |I_2N - I_N|
  std::int64_t panels = 0;
  bool converged = false;
};

// Doubles the panel count from `initial_panels` until
// |I_2N - I_N| <= rel_tol |I_2N| + abs_floor, or max_panels is exceeded
// (converged == false then).
template <class F>
auto integrate_doubling(F&& f, double a, double b, std::int64_t initial_panels, double rel_tol,
                        double abs_floor, std::int64_t max_panels) {
  using R = decltype(f(a));
  Result<R> out;
  std::int64_t panels = std::max<std::int64_t>(1, initial_panels);
  R prev = composite(f, a, b, panels);
  while (panels * 2 <= max_panels) {
    panels *= 2;
    const R cur = composite(f, a, b, panels);
    const double diff = std::abs(cur - prev);
    out = {cur, diff, panels, diff <= rel_tol * std::abs(cur) + abs_floor};
    if (out.converged) return out;
    prev = cur;
  }
  if (out.panels == 0) out = {prev, INFINITY, panels, false};
  return out;
}

}  // namespace resonance::quadrature

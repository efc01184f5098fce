#include "resonance/quadrature.hpp"

#include <numbers>

#include "resonance/errors.hpp"

namespace resonance::quadrature {

GaussLegendre gauss_legendre(int k) {
  if (k < 1) throw DomainError("gauss_legendre: need at least one node");
  GaussLegendre rule;
  rule.nodes.resize(k);
  rule.weights.resize(k);
  for (int i = 0; i < (k + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (k + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int j = 2; j <= k; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = k * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[k - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[k - 1 - i] = w;
  }
  return rule;
}

const GaussLegendre& gl20() {
  static const GaussLegendre rule = gauss_legendre(20);
  return rule;
}

}  // namespace resonance::quadrature

#include "resonance/weights.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "resonance/errors.hpp"

namespace resonance::weights {

namespace {

// exp(1 - 1/(1 - u^2)) on (-1, 1)
double profile(double u) {
  if (!(std::abs(u) < 1.0)) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - u * u));
}

double profile_derivative(double u) {
  if (!(std::abs(u) < 1.0)) return 0.0;
  const double q = 1.0 - u * u;
  return profile(u) * (-2.0 * u / (q * q));
}

// Smooth step on [0, 1]: g(t) / (g(t) + g(1 - t)) with g(t) = exp(-1/t).
// Every derivative vanishes at both ends, so the plateau joins the ramps
// smoothly.
double step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  // ratio g(1-t)/g(t) = exp(1/t - 1/(1-t))
  return 1.0 / (1.0 + std::exp(1.0 / t - 1.0 / (1.0 - t)));
}

double step_derivative(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  const double s = step(t);
  const double dexp = -1.0 / (t * t) - 1.0 / ((1.0 - t) * (1.0 - t));
  // d/dt (1 + e^E)^{-1} = -s^2 e^E E'
  return -s * (1.0 - s) * dexp;
}

// dx = x - M, kept separate so that large M does not swamp the offset.
double eval_offset(const WeightSpec& w, double dx) {
  if (!(dx > 0.0) || !(dx < w.Delta)) return 0.0;
  if (w.shape == Shape::bump) return profile(2.0 * dx / w.Delta - 1.0);
  const double left = w.M1 - w.M;
  const double right_start = w.M2 - w.M;
  if (dx <= left) return step(dx / left);
  if (dx < right_start) return 1.0;
  return step((w.Delta - dx) / (w.Delta - right_start));
}

}  // namespace

WeightSpec make_bump(double M, double Delta) {
  if (!(M > 0.0) || !(Delta > 0.0)) throw DomainError("make_bump: M and Delta must be positive");
  return {M, Delta, Shape::bump, 0.0, 0.0};
}

WeightSpec make_plateau(double M, double Delta, double left_fraction, double right_fraction) {
  if (!(M > 0.0) || !(Delta > 0.0)) throw DomainError("make_plateau: M and Delta must be positive");
  if (!(left_fraction > 0.0) || !(right_fraction > 0.0) || left_fraction + right_fraction >= 1.0) {
    throw DomainError("make_plateau: ramp fractions must be positive and leave a plateau");
  }
  return {M, Delta, Shape::plateau, M + left_fraction * Delta, M + (1.0 - right_fraction) * Delta};
}

double eval_weight(const WeightSpec& w, double x) { return eval_offset(w, x - w.M); }

double eval_weight_derivative(const WeightSpec& w, double x) {
  const double dx = x - w.M;
  if (!(dx > 0.0) || !(dx < w.Delta)) return 0.0;
  if (w.shape == Shape::bump) return profile_derivative(2.0 * dx / w.Delta - 1.0) * 2.0 / w.Delta;
  const double left = w.M1 - w.M;
  const double right_start = w.M2 - w.M;
  if (dx <= left) return step_derivative(dx / left) / left;
  if (dx < right_start) return 0.0;
  const double len = w.Delta - right_start;
  return -step_derivative((w.Delta - dx) / len) / len;
}

std::vector<double> check_derivative_bounds(const WeightSpec& w, int nu_max) {
  if (nu_max < 0 || nu_max > 4) throw DomainError("check_derivative_bounds: nu_max must be in [0, 4]");

  // Fourth-order central stencils for derivatives 1..4, step h.
  auto derivative = [&](int nu, double x, double h) -> double {
    auto f = [&](int k) { return eval_offset(w, x + k * h); };
    switch (nu) {
      case 0: return f(0);
      case 1: return (f(-2) - 8 * f(-1) + 8 * f(1) - f(2)) / (12 * h);
      case 2: return (-f(-2) + 16 * f(-1) - 30 * f(0) + 16 * f(1) - f(2)) / (12 * h * h);
      case 3:
        return (f(-3) - 8 * f(-2) + 13 * f(-1) - 13 * f(1) + 8 * f(2) - f(3)) / (8 * h * h * h);
      default:
        return (-f(-3) + 12 * f(-2) - 39 * f(-1) + 56 * f(0) - 39 * f(1) + 12 * f(2) - f(3)) /
               (6 * h * h * h * h);
    }
  };

  auto sweep = [&](int nu, int points) {
    const double h = w.Delta / points;
    double best = 0.0;
    for (int i = 1; i < points; ++i) {
      const double x = i * h;  // offset from M
      best = std::max(best, std::abs(derivative(nu, x, h)));
    }
    return best * std::pow(w.Delta, nu);
  };

  std::vector<double> c(nu_max + 1, 0.0);
  for (int nu = 0; nu <= nu_max; ++nu) {
    const double coarse = sweep(nu, 2000);
    const double fine = sweep(nu, 4000);
    if (std::abs(fine - coarse) > 1e-2 * fine) {
      throw AccuracyError("check_derivative_bounds: C_" + std::to_string(nu) +
                              " unstable under grid refinement",
                          std::abs(fine - coarse) / fine);
    }
    c[nu] = fine;
  }
  return c;
}

}  // namespace resonance::weights

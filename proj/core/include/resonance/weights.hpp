#pragma once

// Smooth compactly supported weights on [M, M + Delta].

#include <vector>

namespace resonance::weights {

enum class Shape { bump, plateau };

struct WeightSpec {
  double M = 1.0;
  double Delta = 1.0;
  Shape shape = Shape::bump;
  // Plateau only: w == 1 on [M1, M2], M < M1 < M2 < M + Delta.
  double M1 = 0.0;
  double M2 = 0.0;

  double lower() const noexcept { return M; }
  double upper() const noexcept { return M + Delta; }

  // Ratios (M1 - M) : (M2 - M1) : (M + Delta - M2), normalised by Delta.
  double left_ramp() const noexcept { return (M1 - M) / Delta; }
  double flat() const noexcept { return (M2 - M1) / Delta; }
  double right_ramp() const noexcept { return (M + Delta - M2) / Delta; }
};

WeightSpec make_bump(double M, double Delta);

// Ramp fractions default to 1/4, 1/2, 1/4 of Delta.
WeightSpec make_plateau(double M, double Delta, double left_fraction = 0.25,
                        double right_fraction = 0.25);

double eval_weight(const WeightSpec& w, double x);
double eval_weight_derivative(const WeightSpec& w, double x);

// C_nu = Delta^nu sup |w^(nu)| for nu = 0..nu_max (nu_max <= 4), from
// central finite differences; throws AccuracyError when two grid levels
// disagree by more than 1%.
std::vector<double> check_derivative_bounds(const WeightSpec& w, int nu_max);

}  // namespace resonance::weights

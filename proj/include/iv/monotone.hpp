#pragma once

#include <vector>

namespace iv {

// Non-decreasing function on the reals. Step functions take the midpoint
// value (g(x-) + g(x+))/2 at their jump locations; that convention is baked
// into operator() and everything built on top.
struct MonotoneFunction {
  enum class Kind { Linear, Step, PiecewiseLinear, Cubic };
  Kind kind = Kind::Linear;

  // Linear: slope * x + intercept, slope >= 0.
  double slope = 1.0;
  double intercept = 0.0;

  // Step: base plus the jumps strictly left of x plus half of a jump at x.
  double base = 0.0;
  std::vector<double> jump_locations;  // strictly ascending
  std::vector<double> jump_sizes;      // strictly positive

  // PiecewiseLinear: interpolation through (knots, values); outside the knot
  // range the terminal segments extend with their own slopes.
  std::vector<double> knots;   // strictly ascending, size >= 2
  std::vector<double> values;  // non-decreasing

  static MonotoneFunction identity();
  static MonotoneFunction linear(double slope, double intercept);
  static MonotoneFunction step(double base, std::vector<double> locations,
                               std::vector<double> sizes);
  static MonotoneFunction piecewise_linear(std::vector<double> knots,
                                           std::vector<double> values);
  static MonotoneFunction cubic();  // x^3

  double operator()(double x) const;
  bool strictly_increasing() const;

  // Jump and kink locations; integration against a density splits here.
  std::vector<double> critical_points() const;
};

void validate(const MonotoneFunction& g);

}  // namespace iv

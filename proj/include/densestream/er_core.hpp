#pragma once

#include <cstdint>

namespace densestream {

// Limit fractions for the giant component of G(n, c1/n), c1 > 1:
// t in (0,1) solves t*e^{-t} = c1*e^{-c1}, b = 1 - t/c1; then |C|/n -> b and
// |2-core(C)|/n -> b*(1-t).
struct ErCoreSolution {
  double c1 = 0.0;
  double t = 0.0;
  double b = 0.0;

  double core_fraction() const { return b * (1.0 - t); }
};

// Bisection to 1e-12 on t. Throws std::invalid_argument for c1 <= 1 + 1e-6:
// at and near c1 = 1 there is no supercritical regime to solve for.
ErCoreSolution solve_er_core(double c1);

}  // namespace densestream

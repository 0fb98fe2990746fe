#include "densestream/er_core.hpp"

#include <cmath>
#include <stdexcept>

namespace densestream {

ErCoreSolution solve_er_core(double c1) {
  if (!(c1 > 1.0 + 1e-6))
    throw std::invalid_argument("solve_er_core: c1 must exceed 1 (no giant component otherwise)");

  const double rhs = c1 * std::exp(-c1);
  // t*e^{-t} increases on (0,1), from 0 to 1/e > rhs, so the root brackets.
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (mid * std::exp(-mid) < rhs)
      lo = mid;
    else
      hi = mid;
  }

  ErCoreSolution sol;
  sol.c1 = c1;
  sol.t = 0.5 * (lo + hi);
  sol.b = 1.0 - sol.t / c1;
  return sol;
}

}  // namespace densestream

#pragma once

#include <cmath>
#include <functional>

#include "membranekit/errors.hpp"

namespace mkit {

/// Root of a monotone function g on [lo, hi] (both > 0) by bisection in
/// log-space. g(lo) and g(hi) must bracket zero. Iterates until the bracket
/// is narrower than rel_tol relative, or until it collapses onto adjacent
/// doubles, and returns the endpoint with the smaller |g|.
inline double bisect_monotone(const std::function<double(double)>& g, double lo, double hi,
                              double rel_tol = 1e-15) {
  if (!(lo > 0.0) || !(hi > lo)) throw DomainError("bisection needs 0 < lo < hi");
  double glo = g(lo);
  double ghi = g(hi);
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;
  if ((glo > 0.0) == (ghi > 0.0)) throw NumericalError("bisection bracket does not straddle a root");
  for (int iter = 0; iter < 400; ++iter) {
    const double mid = std::sqrt(lo) * std::sqrt(hi);
    if (!(mid > lo && mid < hi) || (hi - lo) <= rel_tol * lo) break;
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    if ((gm > 0.0) == (glo > 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
      ghi = gm;
    }
  }
  return std::fabs(glo) <= std::fabs(ghi) ? lo : hi;
}

/// Expands [lo, hi] geometrically until g changes sign, then bisects.
inline double solve_monotone(const std::function<double(double)>& g, double guess,
                             double rel_tol = 1e-15) {
  if (!(guess > 0.0)) throw DomainError("root search needs a positive starting point");
  double lo = guess / 2.0;
  double hi = guess * 2.0;
  for (int i = 0; i < 200; ++i) {
    const double glo = g(lo);
    const double ghi = g(hi);
    if (glo == 0.0) return lo;
    if (ghi == 0.0) return hi;
    if ((glo > 0.0) != (ghi > 0.0)) return bisect_monotone(g, lo, hi, rel_tol);
    lo /= 4.0;
    hi *= 4.0;
  }
  throw NumericalError("root search failed to bracket a sign change");
}

}  // namespace mkit

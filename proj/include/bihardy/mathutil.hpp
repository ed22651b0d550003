#ifndef BIHARDY_MATHUTIL_HPP
#define BIHARDY_MATHUTIL_HPP

#include <cmath>
#include <limits>

namespace bihardy {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// log(exp(a) + exp(b)) without overflow; handles -inf operands.
double log_add_exp(double a, double b);

/// log(sinh(x)) for x > 0, stable for both tiny and huge x.
double log_sinh(double x);

/// sinh(x)/x extended continuously by 1 at x = 0.
double sinh_over_x(double x);

/// Surface area of the unit sphere S^{n-1} in R^n, n any positive real:
/// 2 pi^{n/2} / Gamma(n/2).
double unit_sphere_area(double n);

inline bool close_rel(double a, double b, double tol) {
  if (a == b) return true;
  return std::fabs(a - b) <= tol * std::max(std::fabs(a), std::fabs(b));
}

}  // namespace bihardy

#endif

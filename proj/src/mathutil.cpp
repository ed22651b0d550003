#include "bihardy/mathutil.hpp"

#include <cmath>

namespace bihardy {

double log_add_exp(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  if (a == kInf || b == kInf) return kInf;
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

double log_sinh(double x) {
  // sinh x = e^x (1 - e^{-2x}) / 2
  if (x > 20.0) return x + std::log1p(-std::exp(-2.0 * x)) - std::log(2.0);
  if (x < 1e-8) return std::log(x) + x * x / 6.0;
  return std::log(std::sinh(x));
}

double sinh_over_x(double x) {
  const double ax = std::fabs(x);
  if (ax < 1e-4) {
    const double x2 = x * x;
    return 1.0 + x2 / 6.0 * (1.0 + x2 / 20.0);
  }
  return std::sinh(x) / x;
}

double unit_sphere_area(double n) {
  const double half = 0.5 * n;
  return 2.0 * std::exp(half * std::log(M_PI) - std::lgamma(half));
}

}  // namespace bihardy

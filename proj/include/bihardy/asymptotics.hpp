#ifndef BIHARDY_ASYMPTOTICS_HPP
#define BIHARDY_ASYMPTOTICS_HPP

#include <optional>

namespace bihardy {

/// Leading behavior of a positive function toward an endpoint of (0, inf):
///
///   f(t) ~ const * exp(rate * t) * t^pow * L(t)^logpow,
///
/// where L(t) = log t toward infinity and log(1/t) toward zero.  At the
/// zero endpoint `rate` is always 0 (exp(rate*t) -> 1 plays no role there).
/// These records propagate through products, real powers and cumulative
/// integration, and drive divergence classification without sampling.
struct EdgeBehavior {
  double rate = 0.0;
  double pow = 0.0;
  double logpow = 0.0;

  EdgeBehavior scaled(double exponent) const {
    return {rate * exponent, pow * exponent, logpow * exponent};
  }
  EdgeBehavior times(const EdgeBehavior& other) const {
    return {rate + other.rate, pow + other.pow, logpow + other.logpow};
  }

  /// Unbounded toward t -> 0+ (rate is ignored there).
  bool grows_at_zero(double tol = 1e-9) const {
    if (pow < -tol) return true;
    if (pow > tol) return false;
    return logpow > tol;
  }
  /// Unbounded toward t -> +inf.
  bool grows_at_inf(double tol = 1e-9) const {
    if (rate > tol) return true;
    if (rate < -tol) return false;
    if (pow > tol) return true;
    if (pow < -tol) return false;
    return logpow > tol;
  }
  /// Tends to 0 toward t -> +inf.
  bool decays_at_inf(double tol = 1e-9) const {
    if (rate < -tol) return true;
    if (rate > tol) return false;
    if (pow < -tol) return true;
    if (pow > tol) return false;
    return logpow < -tol;
  }
};

/// Declared or derived endpoint behaviors for an integrand on (0, inf).
/// Absent entries mean "unknown: classify by sampling".
struct EndpointHints {
  std::optional<EdgeBehavior> at_zero;
  std::optional<EdgeBehavior> at_inf;

  static EndpointHints powers(double e_zero, double e_inf) {
    EndpointHints h;
    h.at_zero = EdgeBehavior{0.0, e_zero, 0.0};
    h.at_inf = EdgeBehavior{0.0, e_inf, 0.0};
    return h;
  }
  EndpointHints scaled(double exponent) const {
    EndpointHints h;
    if (at_zero) h.at_zero = at_zero->scaled(exponent);
    if (at_inf) h.at_inf = at_inf->scaled(exponent);
    return h;
  }
  EndpointHints times(const EndpointHints& other) const {
    EndpointHints h;
    if (at_zero && other.at_zero) h.at_zero = at_zero->times(*other.at_zero);
    if (at_inf && other.at_inf) h.at_inf = at_inf->times(*other.at_inf);
    return h;
  }
};

}  // namespace bihardy

#endif

#ifndef BIHARDY_REDUCTION_HPP
#define BIHARDY_REDUCTION_HPP

#include <functional>
#include <memory>

#include "bihardy/exponents.hpp"
#include "bihardy/geometry.hpp"
#include "bihardy/weights.hpp"

namespace bihardy {

/// Nonnegative function on the half line with known support.  The truncated
/// power family t^a on (t_lo, t_hi) keeps its running integral in closed
/// form; custom functions get a memoized numeric cumulative.
class LineFunction {
 public:
  static LineFunction power_trunc(double a, double t_lo, double t_hi);
  static LineFunction custom(std::function<double(double)> f, double support_lo,
                             double support_hi);

  double operator()(double t) const;
  /// Integral over (0, tau].
  double cumulative(double tau) const;
  double total() const { return cumulative(support_hi_); }

  double support_lo() const { return support_lo_; }
  double support_hi() const { return support_hi_; }
  bool is_power_trunc() const { return power_; }
  double exponent() const { return a_; }

 private:
  LineFunction() = default;
  void build_cumulative();

  bool power_ = true;
  double a_ = 0.0;
  double support_lo_ = 0.0;
  double support_hi_ = 0.0;
  std::function<double(double)> f_;
  std::shared_ptr<MonotoneCubic> cum_;  // (log t, log cumulative) on the support
  double log_first_ = -kInf;
  double first_node_ = 0.0;
  double log_total_ = -kInf;
};

/// A nonnegative radial function with known support.
struct RadialFunction {
  std::function<double(double)> eval;
  double support_lo = 0.0;
  double support_hi = kInf;
  double operator()(double r) const {
    if (r <= support_lo || r >= support_hi) return 0.0;
    return eval(r);
  }
};

/// F(s) = f(s) * Lambda(s): the line shadow of a radial function.
LineFunction project(const RadialFunction& f, const RadialGeometry& geo);

/// The extremizing lift: f(t) = F(t) * v_i(t)^{1-p_i'} * v_line_i(t)^{1/(p_i-1)}.
/// project(lift(F)) = F by algebraic cancellation; the numeric round trip is a
/// consistency check of the weight plumbing.  Throws std::domain_error when
/// the line weight is not positive-finite on the support.
RadialFunction lift(const LineFunction& F, const RadialGeometry& geo, const WeightTriple& w,
                    const ExponentSystem& exps, int i);

/// Left side of the line inequality:
/// ( integral of (int_0^tau F1)^q (int_0^tau F2)^q u_line(tau) dtau )^{1/q}.
/// Returns +inf when the tail diverges.
double lhs_line(const LineFunction& F1, const LineFunction& F2, const LineWeights& lw, double q,
                const QuadConfig& cfg = {});

/// Right side factor i: ( integral of F^{p_i} v_line_i )^{1/p_i}.
double rhs_line(const LineFunction& F, const LineWeights& lw, int i, const ExponentSystem& exps,
                const QuadConfig& cfg = {});

/// Space-side twins, computed through the radial polar reduction with an
/// independent numeric path (memoized cumulative of f * Lambda).
double lhs_space(const RadialFunction& f1, const RadialFunction& f2, const RadialGeometry& geo,
                 const RadialWeight& u, double q, const QuadConfig& cfg = {});
double rhs_space(const RadialFunction& f, const RadialGeometry& geo, const RadialWeight& v,
                 double p, const QuadConfig& cfg = {});

/// lhs_line / (rhs_line_1 * rhs_line_2); every finite value is a lower bound
/// on the best constant.  Zero/infinite denominators raise std::domain_error;
/// a vanishing numerator yields 0.
double ratio(const LineFunction& F1, const LineFunction& F2, const LineWeights& lw,
             const ExponentSystem& exps, const QuadConfig& cfg = {});

}  // namespace bihardy

#endif

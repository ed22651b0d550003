#ifndef BIHARDY_WEIGHTS_HPP
#define BIHARDY_WEIGHTS_HPP

#include <functional>
#include <memory>
#include <optional>
#include <utility>

#include "bihardy/asymptotics.hpp"
#include "bihardy/exponents.hpp"
#include "bihardy/geometry.hpp"
#include "bihardy/quad.hpp"

namespace bihardy {

/// A strictly positive radial weight on (0, inf).  Power and sinh-power
/// forms carry symbolic endpoint behavior; custom weights may declare their
/// endpoint power exponents, otherwise classification falls back to slope
/// sniffing downstream.
class RadialWeight {
 public:
  static RadialWeight power(double alpha);
  static RadialWeight sinh_power(double alpha, double scale = 1.0);
  static RadialWeight custom(std::function<double(double)> eval,
                             std::optional<std::pair<double, double>> endpoint_exponents = {});

  double operator()(double r) const;
  double log_value(double r) const;

  bool is_power() const { return form_ == Form::Power; }
  bool is_sinh_power() const { return form_ == Form::SinhPower; }
  double exponent() const { return alpha_; }  // Power / SinhPower
  double scale() const { return scale_; }     // SinhPower

  std::optional<EdgeBehavior> behavior_at_zero() const;
  std::optional<EdgeBehavior> behavior_at_inf() const;

 private:
  enum class Form { Power, SinhPower, Custom };
  Form form_ = Form::Power;
  double alpha_ = 0.0;
  double scale_ = 1.0;
  std::function<double(double)> eval_;
  std::optional<std::pair<double, double>> declared_;
};

struct WeightTriple {
  RadialWeight u;
  RadialWeight v1;
  RadialWeight v2;
  const RadialWeight& v(int i) const { return i == 1 ? v1 : v2; }
};

/// The reduced one-dimensional weights of the radial problem:
///   u_line(tau)       = u(tau) * Lambda(tau)
///   v_line_i(tau)     = ( v_i(tau)^{1 - p_i'} * Lambda(tau) )^{1 - p_i}
///   v_dual_i(tau)     = v_i(tau)^{1 - p_i'} * Lambda(tau)   ( = v_line_i^{1 - p_i'} )
/// All evaluators are exposed through their logarithms; hints record the
/// symbolic endpoint behavior when the weights and geometry provide it.
struct LineWeights {
  LogDensity log_u;
  LogDensity log_v[2];
  LogDensity log_v_dual[2];
  EndpointHints u_hints;
  EndpointHints v_dual_hints[2];

  double u_line(double tau) const { return std::exp(log_u(tau)); }
  double v_line(int i, double tau) const { return std::exp(log_v[i - 1](tau)); }
  double v_dual(int i, double tau) const { return std::exp(log_v_dual[i - 1](tau)); }
  const LogDensity& log_v_of(int i) const { return log_v[i - 1]; }
  const LogDensity& log_v_dual_of(int i) const { return log_v_dual[i - 1]; }
  const EndpointHints& v_dual_hints_of(int i) const { return v_dual_hints[i - 1]; }
};

/// Validates the triple's local integrability on the working range and
/// assembles the reduced line weights.  Throws std::domain_error on broken
/// preconditions (non-finite weight values, p_i <= 1 handled by
/// ExponentSystem construction).
LineWeights build_line_weights(const RadialGeometry& geo, const WeightTriple& w,
                               const ExponentSystem& exps);

/// Cumulative kernels of the characterization:
///   u1(t)      = integral of u_line over [t, inf)
///   v1(i, t)   = integral of v_dual_i over (0, t]
/// +inf is a value, not an error: a divergent defining integral makes the
/// kernel identically +inf.  Immutable after construction.
class CumulativeKernels {
 public:
  double u1(double t) const;
  double log_u1(double t) const;
  bool u1_divergent() const { return !u1_; }

  double v1(int i, double t) const;
  double log_v1(int i, double t) const;
  bool v1_divergent(int i) const { return !v1_[i - 1]; }

  std::optional<EdgeBehavior> u1_behavior_at_zero() const;
  std::optional<EdgeBehavior> u1_behavior_at_inf() const;
  std::optional<EdgeBehavior> v1_behavior_at_zero(int i) const;
  std::optional<EdgeBehavior> v1_behavior_at_inf(int i) const;

 private:
  friend CumulativeKernels kernels(const LineWeights&, const QuadConfig&);
  std::shared_ptr<const CumulativeIntegral> u1_;
  std::shared_ptr<const CumulativeIntegral> v1_[2];
};

/// Builds the cumulative kernels by quadrature with divergence
/// classification; throws UndeterminedError when an endpoint cannot be
/// classified (custom weight without declared exponents and inconsistent
/// slopes).
CumulativeKernels kernels(const LineWeights& lw, const QuadConfig& cfg = {});

}  // namespace bihardy

#endif

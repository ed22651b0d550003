#include "bihardy/weights.hpp"

#include <cmath>
#include <stdexcept>

#include "bihardy/mathutil.hpp"

namespace bihardy {

RadialWeight RadialWeight::power(double alpha) {
  RadialWeight w;
  w.form_ = Form::Power;
  w.alpha_ = alpha;
  return w;
}

RadialWeight RadialWeight::sinh_power(double alpha, double scale) {
  if (!(scale > 0.0)) throw std::domain_error("sinh_power: scale must be positive");
  RadialWeight w;
  w.form_ = Form::SinhPower;
  w.alpha_ = alpha;
  w.scale_ = scale;
  return w;
}

RadialWeight RadialWeight::custom(std::function<double(double)> eval,
                                  std::optional<std::pair<double, double>> endpoint_exponents) {
  RadialWeight w;
  w.form_ = Form::Custom;
  w.eval_ = std::move(eval);
  w.declared_ = endpoint_exponents;
  return w;
}

double RadialWeight::operator()(double r) const {
  if (form_ == Form::Custom) return eval_(r);
  return std::exp(log_value(r));
}

double RadialWeight::log_value(double r) const {
  if (!(r > 0.0)) throw std::domain_error("weight: r must be positive");
  switch (form_) {
    case Form::Power:
      return alpha_ * std::log(r);
    case Form::SinhPower:
      return alpha_ * log_sinh(scale_ * r);
    case Form::Custom: {
      const double v = eval_(r);
      if (std::isnan(v) || v < 0.0 || v == kInf)
        throw std::domain_error("custom weight must be strictly positive and finite");
      // underflow at extreme radii reads as log = -inf rather than an error
      return v > 0.0 ? std::log(v) : -kInf;
    }
  }
  return 0.0;
}

std::optional<EdgeBehavior> RadialWeight::behavior_at_zero() const {
  switch (form_) {
    case Form::Power:
      return EdgeBehavior{0.0, alpha_, 0.0};
    case Form::SinhPower:
      return EdgeBehavior{0.0, alpha_, 0.0};  // sinh(s r) ~ s r
    case Form::Custom:
      if (declared_) return EdgeBehavior{0.0, declared_->first, 0.0};
      return std::nullopt;
  }
  return std::nullopt;
}

std::optional<EdgeBehavior> RadialWeight::behavior_at_inf() const {
  switch (form_) {
    case Form::Power:
      return EdgeBehavior{0.0, alpha_, 0.0};
    case Form::SinhPower:
      return EdgeBehavior{alpha_ * scale_, 0.0, 0.0};  // sinh(s r) ~ e^{s r}/2
    case Form::Custom:
      if (declared_) return EdgeBehavior{0.0, declared_->second, 0.0};
      return std::nullopt;
  }
  return std::nullopt;
}

namespace {

std::optional<EdgeBehavior> combine(const std::optional<EdgeBehavior>& weight_part,
                                    double weight_exponent, const EdgeBehavior& geo_part) {
  if (!weight_part) return std::nullopt;
  return weight_part->scaled(weight_exponent).times(geo_part);
}

void probe_positive(const LogDensity& f, const char* what) {
  for (double r : {1e-3, 1.0, 1e3}) {
    const double v = f(r);
    if (std::isnan(v) || v == kInf)
      throw std::domain_error(std::string("line weight not locally integrable: ") + what);
  }
}

}  // namespace

LineWeights build_line_weights(const RadialGeometry& geo, const WeightTriple& w,
                               const ExponentSystem& exps) {
  LineWeights lw;
  const RadialWeight u = w.u;
  lw.log_u = [geo, u](double tau) { return u.log_value(tau) + geo.log_surface_density(tau); };
  lw.u_hints.at_zero = combine(u.behavior_at_zero(), 1.0, geo.behavior_at_zero());
  lw.u_hints.at_inf = combine(u.behavior_at_inf(), 1.0, geo.behavior_at_inf());

  for (int i = 1; i <= 2; ++i) {
    const RadialWeight v = w.v(i);
    const double pc = exps.p_conj(i);
    const double dual_exp = 1.0 - pc;       // exponent on v inside the dual density
    const double line_exp = 1.0 - exps.p(i);  // outer exponent defining v_line
    auto log_dual = [geo, v, dual_exp](double tau) {
      return dual_exp * v.log_value(tau) + geo.log_surface_density(tau);
    };
    lw.log_v_dual[i - 1] = log_dual;
    lw.log_v[i - 1] = [log_dual, line_exp](double tau) { return line_exp * log_dual(tau); };
    lw.v_dual_hints[i - 1].at_zero = combine(v.behavior_at_zero(), dual_exp, geo.behavior_at_zero());
    lw.v_dual_hints[i - 1].at_inf = combine(v.behavior_at_inf(), dual_exp, geo.behavior_at_inf());
  }

  probe_positive(lw.log_u, "u");
  probe_positive(lw.log_v_dual[0], "v1");
  probe_positive(lw.log_v_dual[1], "v2");
  return lw;
}

CumulativeKernels kernels(const LineWeights& lw, const QuadConfig& cfg) {
  CumulativeKernels k;
  {
    auto out = CumulativeIntegral::build(CumulativeIntegral::Side::Suffix, lw.log_u,
                                         lw.u_hints, cfg);
    if (out.classification == EndpointClass::Undetermined)
      throw UndeterminedError(Endpoint::Infinity, "u kernel: " + out.diagnostic);
    k.u1_ = out.integral;  // null when divergent: kernel is identically +inf
  }
  for (int i = 0; i < 2; ++i) {
    auto out = CumulativeIntegral::build(CumulativeIntegral::Side::Prefix, lw.log_v_dual[i],
                                         lw.v_dual_hints[i], cfg);
    if (out.classification == EndpointClass::Undetermined)
      throw UndeterminedError(Endpoint::Zero, "v kernel: " + out.diagnostic);
    k.v1_[i] = out.integral;
  }
  return k;
}

double CumulativeKernels::u1(double t) const { return u1_ ? u1_->value(t) : kInf; }
double CumulativeKernels::log_u1(double t) const { return u1_ ? u1_->log_value(t) : kInf; }
double CumulativeKernels::v1(int i, double t) const {
  return v1_[i - 1] ? v1_[i - 1]->value(t) : kInf;
}
double CumulativeKernels::log_v1(int i, double t) const {
  return v1_[i - 1] ? v1_[i - 1]->log_value(t) : kInf;
}

std::optional<EdgeBehavior> CumulativeKernels::u1_behavior_at_zero() const {
  return u1_ ? u1_->behavior_at_zero() : std::nullopt;
}
std::optional<EdgeBehavior> CumulativeKernels::u1_behavior_at_inf() const {
  return u1_ ? u1_->behavior_at_inf() : std::nullopt;
}
std::optional<EdgeBehavior> CumulativeKernels::v1_behavior_at_zero(int i) const {
  return v1_[i - 1] ? v1_[i - 1]->behavior_at_zero() : std::nullopt;
}
std::optional<EdgeBehavior> CumulativeKernels::v1_behavior_at_inf(int i) const {
  return v1_[i - 1] ? v1_[i - 1]->behavior_at_inf() : std::nullopt;
}

}  // namespace bihardy

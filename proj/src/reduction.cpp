#include "bihardy/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "bihardy/mathutil.hpp"

namespace bihardy {

namespace {

constexpr int kCumulativeNodes = 512;

// log of integral of exp(log_f) over [a, b] by the shared segment rule
double log_piece(const LogDensity& log_f, double a, double b) {
  auto log_g = [&log_f](double y) { return log_f(std::exp(y)) + y; };
  return detail::log_integral_segment(log_g, std::log(a), std::log(b), 1e-12);
}

}  // namespace

LineFunction LineFunction::power_trunc(double a, double t_lo, double t_hi) {
  if (!(t_lo > 0.0) || !(t_hi > t_lo))
    throw std::domain_error("power_trunc: need 0 < t_lo < t_hi");
  LineFunction F;
  F.power_ = true;
  F.a_ = a;
  F.support_lo_ = t_lo;
  F.support_hi_ = t_hi;
  return F;
}

LineFunction LineFunction::custom(std::function<double(double)> f, double support_lo,
                                  double support_hi) {
  if (!(support_lo >= 0.0) || !(support_hi > support_lo))
    throw std::domain_error("LineFunction: bad support");
  LineFunction F;
  F.power_ = false;
  F.f_ = std::move(f);
  F.support_lo_ = support_lo;
  F.support_hi_ = support_hi;
  F.build_cumulative();
  return F;
}

double LineFunction::operator()(double t) const {
  if (t <= support_lo_ || t >= support_hi_) return 0.0;
  return power_ ? std::pow(t, a_) : f_(t);
}

void LineFunction::build_cumulative() {
  const double lo = std::max(support_lo_, 1e-12);
  const double ya = std::log(lo) + 1e-9;
  const double yb = std::log(support_hi_);
  const int n = kCumulativeNodes;
  std::vector<double> ys(n), vals(n);
  auto log_f = [this](double t) {
    const double v = (*this)(t);
    return v > 0.0 ? std::log(v) : -kInf;
  };
  for (int j = 0; j < n; ++j) ys[j] = ya + (yb - ya) * j / (n - 1);
  double acc = log_piece(log_f, support_lo_ > 0.0 ? support_lo_ : 1e-300, std::exp(ys[0]));
  vals[0] = acc;
  for (int j = 1; j < n; ++j) {
    acc = log_add_exp(acc, log_piece(log_f, std::exp(ys[j - 1]), std::exp(ys[j])));
    vals[j] = acc;
  }
  first_node_ = std::exp(ys[0]);
  log_first_ = vals[0];
  log_total_ = vals[n - 1];
  if (log_total_ == -kInf) return;  // zero function: cum_ stays empty
  for (double& v : vals) v = std::max(v, log_total_ - 900.0);
  cum_ = std::make_shared<MonotoneCubic>(ys, vals);
}

double LineFunction::cumulative(double tau) const {
  if (tau <= support_lo_) return 0.0;
  if (power_) {
    const double hi = std::min(tau, support_hi_);
    if (std::fabs(a_ + 1.0) < 1e-12) return std::log(hi / support_lo_);
    return (std::pow(hi, a_ + 1.0) - std::pow(support_lo_, a_ + 1.0)) / (a_ + 1.0);
  }
  if (!cum_) return 0.0;  // zero function
  const double t = std::min(tau, support_hi_);
  if (t <= first_node_) {
    return std::exp(log_piece(
        [this](double s) {
          const double v = (*this)(s);
          return v > 0.0 ? std::log(v) : -kInf;
        },
        support_lo_ > 0.0 ? support_lo_ : 1e-300, t));
  }
  return std::exp((*cum_)(std::log(t)));
}

LineFunction project(const RadialFunction& f, const RadialGeometry& geo) {
  auto eval = [f, geo](double s) { return f(s) * geo.surface_density(s); };
  return LineFunction::custom(eval, f.support_lo, f.support_hi);
}

RadialFunction lift(const LineFunction& F, const RadialGeometry& geo, const WeightTriple& w,
                    const ExponentSystem& exps, int i) {
  const RadialWeight v = w.v(i);
  const double pc = exps.p_conj(i);
  const double p = exps.p(i);
  const double dual_exp = 1.0 - pc;
  const double line_exp = 1.0 - p;
  // v_line_i = (v^{1-p'} Lambda)^{1-p}; probe it on the support
  auto log_v_line = [geo, v, dual_exp, line_exp](double t) {
    return line_exp * (dual_exp * v.log_value(t) + geo.log_surface_density(t));
  };
  for (double frac : {0.01, 0.5, 0.99}) {
    const double t = F.support_lo() + frac * (F.support_hi() - F.support_lo());
    const double lv = log_v_line(t);
    if (!std::isfinite(lv))
      throw std::domain_error("lift: line weight not positive-finite on the support");
  }
  RadialFunction f;
  f.support_lo = F.support_lo();
  f.support_hi = F.support_hi();
  f.eval = [F, v, geo, dual_exp, p, log_v_line](double t) {
    const double Ft = F(t);
    if (Ft <= 0.0) return 0.0;
    const double lf = std::log(Ft) + dual_exp * v.log_value(t) +
                      log_v_line(t) / (p - 1.0);
    return std::exp(lf);
  };
  return f;
}

namespace {

// integral of Phi1^q Phi2^q w(tau) dtau from the first point where both
// cumulatives are positive, with the tail treated through `w`'s hint
double lhs_outer(const std::function<double(double)>& phi1,
                 const std::function<double(double)>& phi2, double q, const LogDensity& log_w,
                 const EndpointHints& w_hints, std::span<const double> breakpoints, double start,
                 const QuadConfig& cfg) {
  auto f = [&](double tau) {
    const double a = phi1(tau);
    if (a <= 0.0) return 0.0;
    const double b = phi2(tau);
    if (b <= 0.0) return 0.0;
    return std::exp(q * (std::log(a) + std::log(b)) + log_w(tau));
  };
  EndpointHints hints;
  hints.at_inf = w_hints.at_inf;  // cumulatives are constant beyond their supports
  const QuadResult r = integrate_piecewise(f, start, kInf, breakpoints, cfg, hints);
  if (r.is_divergent()) return kInf;
  if (r.is_undetermined()) throw UndeterminedError(r.endpoint, r.diagnostic);
  return std::pow(r.value, 1.0 / q);
}

}  // namespace

double lhs_line(const LineFunction& F1, const LineFunction& F2, const LineWeights& lw, double q,
                const QuadConfig& cfg) {
  const double start = std::max(F1.support_lo(), F2.support_lo());
  const std::vector<double> bps = {F1.support_lo(), F1.support_hi(), F2.support_lo(),
                                   F2.support_hi()};
  auto phi1 = [&F1](double tau) { return F1.cumulative(tau); };
  auto phi2 = [&F2](double tau) { return F2.cumulative(tau); };
  return lhs_outer(phi1, phi2, q, lw.log_u, lw.u_hints, bps, start, cfg);
}

double rhs_line(const LineFunction& F, const LineWeights& lw, int i, const ExponentSystem& exps,
                const QuadConfig& cfg) {
  const double p = exps.p(i);
  auto f = [&F, &lw, i, p](double t) {
    const double v = F(t);
    if (v <= 0.0) return 0.0;
    return std::exp(p * std::log(v) + lw.log_v_of(i)(t));
  };
  const QuadResult r = integrate(f, F.support_lo(), F.support_hi(), cfg);
  if (r.is_divergent()) return kInf;
  if (r.is_undetermined()) throw UndeterminedError(r.endpoint, r.diagnostic);
  return std::pow(r.value, 1.0 / p);
}

namespace {

// memoized cumulative of f * Lambda over the support of f
std::function<double(double)> space_cumulative(const RadialFunction& f,
                                               const RadialGeometry& geo) {
  const double lo = f.support_lo;
  const double hi = f.support_hi;
  auto log_fl = [f, geo](double r) {
    const double v = f(r);
    return v > 0.0 ? std::log(v) + geo.log_surface_density(r) : -kInf;
  };
  const double ya = std::log(std::max(lo, 1e-12)) + 1e-9;
  const double yb = std::log(hi);
  const int n = kCumulativeNodes;
  std::vector<double> ys(n), vals(n);
  for (int j = 0; j < n; ++j) ys[j] = ya + (yb - ya) * j / (n - 1);
  double acc = log_piece(log_fl, lo > 0.0 ? lo : 1e-300, std::exp(ys[0]));
  vals[0] = acc;
  for (int j = 1; j < n; ++j) {
    acc = log_add_exp(acc, log_piece(log_fl, std::exp(ys[j - 1]), std::exp(ys[j])));
    vals[j] = acc;
  }
  const double log_total = vals[n - 1];
  if (log_total == -kInf) {
    return [](double) { return 0.0; };
  }
  for (double& v : vals) v = std::max(v, log_total - 900.0);
  auto interp = std::make_shared<MonotoneCubic>(ys, vals);
  const double first = std::exp(ys[0]);
  return [=](double r) {
    if (r <= lo) return 0.0;
    if (r >= hi) return std::exp(log_total);
    if (r <= first) return std::exp(log_piece(log_fl, lo > 0.0 ? lo : 1e-300, r));
    return std::exp((*interp)(std::log(r)));
  };
}

}  // namespace

double lhs_space(const RadialFunction& f1, const RadialFunction& f2, const RadialGeometry& geo,
                 const RadialWeight& u, double q, const QuadConfig& cfg) {
  auto phi1 = space_cumulative(f1, geo);
  auto phi2 = space_cumulative(f2, geo);
  auto log_w = [u, geo](double r) { return u.log_value(r) + geo.log_surface_density(r); };
  EndpointHints w_hints;
  if (auto b = u.behavior_at_inf()) w_hints.at_inf = b->times(geo.behavior_at_inf());
  const double start = std::max(f1.support_lo, f2.support_lo);
  const std::vector<double> bps = {f1.support_lo, f1.support_hi, f2.support_lo, f2.support_hi};
  return lhs_outer(phi1, phi2, q, log_w, w_hints, bps, start, cfg);
}

double rhs_space(const RadialFunction& f, const RadialGeometry& geo, const RadialWeight& v,
                 double p, const QuadConfig& cfg) {
  auto g = [&](double r) {
    const double x = f(r);
    if (x <= 0.0) return 0.0;
    return std::exp(p * std::log(x) + v.log_value(r) + geo.log_surface_density(r));
  };
  const QuadResult r = integrate(g, f.support_lo, f.support_hi, cfg);
  if (r.is_divergent()) return kInf;
  if (r.is_undetermined()) throw UndeterminedError(r.endpoint, r.diagnostic);
  return std::pow(r.value, 1.0 / p);
}

double ratio(const LineFunction& F1, const LineFunction& F2, const LineWeights& lw,
             const ExponentSystem& exps, const QuadConfig& cfg) {
  const double r1 = rhs_line(F1, lw, 1, exps, cfg);
  const double r2 = rhs_line(F2, lw, 2, exps, cfg);
  if (!(r1 > 0.0) || !(r2 > 0.0) || !std::isfinite(r1) || !std::isfinite(r2))
    throw std::domain_error("ratio: right side must be positive and finite");
  const double l = lhs_line(F1, F2, lw, exps.q(), cfg);
  if (l == 0.0) return 0.0;
  return l / (r1 * r2);
}

}  // namespace bihardy

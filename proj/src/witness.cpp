#include "bihardy/witness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <stdexcept>

#include "bihardy/mathutil.hpp"

namespace bihardy {

namespace {

using Params = std::array<double, 4>;  // a1, a2, log t_lo, w = log(t_hi/t_lo)

constexpr double kMinWindow = 1e-3;  // floor on w keeps t_lo < t_hi

struct Objective {
  const WitnessDatum* datum;
  const ParamBox* box;
  std::vector<TraceRow>* trace;
  int* evals;
  int budget;

  Params clamp(const Params& x) const {
    Params c = x;
    c[0] = std::clamp(c[0], box->a_min, box->a_max);
    c[1] = std::clamp(c[1], box->a_min, box->a_max);
    c[2] = std::clamp(c[2], box->log_tlo_min, box->log_tlo_max);
    const double w_max = std::max(kMinWindow, box->log_thi_max - c[2]);
    c[3] = std::clamp(c[3], kMinWindow, w_max);
    return c;
  }

  // returns -ratio (+penalty for leaving the box); invalid evaluations and an
  // exhausted budget map to a large value
  double operator()(const Params& x) const {
    if (*evals >= budget) return 1e12;
    const Params c = clamp(x);
    double penalty = 0.0;
    for (int i = 0; i < 4; ++i) penalty += (x[i] - c[i]) * (x[i] - c[i]);
    const double t_lo = std::exp(c[2]);
    const double t_hi = std::exp(c[2] + c[3]);
    double r;
    try {
      const LineFunction F1 = LineFunction::power_trunc(c[0], t_lo, t_hi);
      const LineFunction F2 = LineFunction::power_trunc(c[1], t_lo, t_hi);
      r = ratio(F1, F2, datum->lw, datum->exps, datum->quad);
    } catch (const std::exception&) {
      r = -kInf;
    }
    ++*evals;
    trace->push_back({*evals, c[0], c[1], c[2], c[2] + c[3], r});
    if (!std::isfinite(r)) return 1e9;
    return -r + 10.0 * penalty;
  }
};

struct SimplexResult {
  Params best;
  double fbest;
};

SimplexResult nelder_mead(const Objective& obj, const Params& start, double scale,
                          int max_evals) {
  constexpr int n = 4;
  std::array<Params, n + 1> x;
  std::array<double, n + 1> fx;
  x[0] = start;
  fx[0] = obj(x[0]);
  for (int i = 1; i <= n; ++i) {
    x[i] = start;
    x[i][i - 1] += scale * (i == 3 ? 0.5 : 1.0);
    fx[i] = obj(x[i]);
  }
  int used = n + 1;

  auto order = [&]() {
    for (int i = 0; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j)
        if (fx[j] < fx[i]) {
          std::swap(fx[i], fx[j]);
          std::swap(x[i], x[j]);
        }
  };
  order();

  while (used < max_evals) {
    if (std::fabs(fx[n] - fx[0]) <= 1e-10 * (1.0 + std::fabs(fx[0]))) break;
    Params centroid{};
    for (int i = 0; i < n; ++i)
      for (int d = 0; d < 4; ++d) centroid[d] += x[i][d] / n;

    auto blend = [&](double c) {
      Params p;
      for (int d = 0; d < 4; ++d) p[d] = centroid[d] + c * (centroid[d] - x[n][d]);
      return p;
    };
    const Params xr = blend(1.0);
    const double fr = obj(xr);
    ++used;
    if (fr < fx[0]) {
      const Params xe = blend(2.0);
      const double fe = obj(xe);
      ++used;
      if (fe < fr) {
        x[n] = xe;
        fx[n] = fe;
      } else {
        x[n] = xr;
        fx[n] = fr;
      }
    } else if (fr < fx[n - 1]) {
      x[n] = xr;
      fx[n] = fr;
    } else {
      const Params xc = blend(fr < fx[n] ? 0.5 : -0.5);
      const double fc = obj(xc);
      ++used;
      if (fc < std::min(fr, fx[n])) {
        x[n] = xc;
        fx[n] = fc;
      } else {
        // shrink toward the best vertex
        for (int i = 1; i <= n; ++i) {
          for (int d = 0; d < 4; ++d) x[i][d] = x[0][d] + 0.5 * (x[i][d] - x[0][d]);
          fx[i] = obj(x[i]);
          ++used;
        }
      }
    }
    order();
  }
  return {x[0], fx[0]};
}

}  // namespace

RatioWitness search_best_ratio(const WitnessDatum& datum, const WitnessSearchConfig& cfg) {
  RatioWitness out;
  int evals = 0;
  Objective obj{&datum, &cfg.box, &out.trace, &evals, std::max(cfg.budget, 16)};

  std::vector<Params> starts;
  // balance-informed: exponents making F^{p_i} v_line_i near-critical
  for (double offset : {0.1, -0.1}) {
    bool ok = true;
    Params s{};
    for (int i = 1; i <= 2; ++i) {
      const auto hz = datum.lw.v_dual_hints_of(i).at_zero;
      if (!hz || hz->rate != 0.0) {
        ok = false;
        break;
      }
      const double p = datum.exps.p(i);
      const double v_line_pow = (1.0 - p) * hz->pow;  // v_line_i ~ t^{(1-p)(m-1)}
      s[i - 1] = (-1.0 + offset - v_line_pow) / p;
    }
    if (ok) {
      s[2] = cfg.box.log_tlo_min * 0.8 + cfg.box.log_tlo_max * 0.2;
      const double thi = cfg.box.log_thi_max * 0.8 + cfg.box.log_thi_min * 0.2;
      s[3] = std::max(kMinWindow, thi - s[2]);
      starts.push_back(obj.clamp(s));
    }
  }
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  while (static_cast<int>(starts.size()) < std::max(cfg.restarts, 1)) {
    Params s;
    s[0] = cfg.box.a_min + unit(rng) * (cfg.box.a_max - cfg.box.a_min);
    s[1] = cfg.box.a_min + unit(rng) * (cfg.box.a_max - cfg.box.a_min);
    s[2] = cfg.box.log_tlo_min + unit(rng) * (cfg.box.log_tlo_max - cfg.box.log_tlo_min);
    const double thi = cfg.box.log_thi_min + unit(rng) * (cfg.box.log_thi_max - cfg.box.log_thi_min);
    s[3] = std::max(kMinWindow, thi - s[2]);
    starts.push_back(obj.clamp(s));
  }

  const int per_restart = std::max(24, cfg.budget / std::max<int>(1, starts.size()));
  SimplexResult best{{}, kInf};
  bool any = false;
  for (const Params& s : starts) {
    if (evals >= obj.budget) break;
    const SimplexResult r = nelder_mead(obj, s, 0.4, std::min(per_restart, obj.budget - evals));
    if (!any || r.fbest < best.fbest ||
        (r.fbest == best.fbest && r.best < best.best)) {
      best = r;
      any = true;
    }
  }
  if (!any || best.fbest >= 1e8)
    throw std::runtime_error("witness search: no valid evaluation inside the box");

  const Params c = obj.clamp(best.best);
  out.ratio = -best.fbest;  // penalty is zero at clamped optimum
  out.a1 = c[0];
  out.a2 = c[1];
  out.t_lo = std::exp(c[2]);
  out.t_hi = std::exp(c[2] + c[3]);
  out.evals = evals;
  // re-evaluate at the clamped point so the reported ratio matches the params
  try {
    out.ratio = ratio(LineFunction::power_trunc(out.a1, out.t_lo, out.t_hi),
                      LineFunction::power_trunc(out.a2, out.t_lo, out.t_hi), datum.lw,
                      datum.exps, datum.quad);
  } catch (const std::exception&) {
  }
  return out;
}

double dilation_exponent(const RadialGeometry& geo, const WeightTriple& w,
                         const ExponentSystem& exps, double /*a1*/, double /*a2*/) {
  if (geo.kind() != GeometryKind::Homogeneous)
    throw std::invalid_argument("dilation_exponent: homogeneous backend only");
  if (!w.u.is_power() || !w.v1.is_power() || !w.v2.is_power())
    throw std::invalid_argument("dilation_exponent: all-power weights only");
  const double Q = geo.dim();
  const double alpha = w.u.exponent();
  const double m1 = w.v1.exponent() * (1.0 - exps.p1_conj()) + Q;
  const double m2 = w.v2.exponent() * (1.0 - exps.p2_conj()) + Q;
  return (alpha + Q) / exps.q() + m1 / exps.p1_conj() + m2 / exps.p2_conj();
}

double classic_hardy_calibration(double p, double eps, double delta, const QuadConfig& cfg) {
  if (!(p > 1.0)) throw std::domain_error("calibration: p must exceed 1");
  if (!(eps < p - 1.0)) throw std::domain_error("calibration: need eps < p - 1");
  if (!(delta > 0.0)) throw std::domain_error("calibration: delta must be positive");
  const double s = -(1.0 + eps) / p + delta;

  // running integral of the family in closed form; the integrand is assembled
  // in log space so extreme x cannot overflow intermediates
  auto num_f = [p, eps, s](double x) {
    const double log_phi =
        (x < 1.0 ? (s + 1.0) * std::log(x) : 0.0) - std::log(s + 1.0);
    return std::exp(p * log_phi + (eps - p) * std::log(x));
  };
  EndpointHints num_hints = EndpointHints::powers(p * s + eps, eps - p);
  const QuadResult num =
      integrate_piecewise(num_f, 0.0, kInf, std::array<double, 1>{1.0}, cfg, num_hints);
  if (!num.is_value())
    throw std::domain_error("calibration: left-side integral did not converge");

  auto den_f = [&](double x) { return std::pow(x, p * s + eps); };
  const QuadResult den =
      integrate(den_f, 0.0, 1.0, cfg, EndpointHints::powers(p * s + eps, 0.0));
  if (!den.is_value() || den.value <= 0.0)
    throw std::domain_error("calibration: right-side integral did not converge");
  return num.value / den.value;
}

}  // namespace bihardy

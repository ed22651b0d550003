#include "bihardy/quad.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <numbers>

namespace bihardy {

namespace {

constexpr double kGuardBand = 0.02;  // half-width of the critical-exponent band
constexpr double kSymTol = 1e-9;     // symbolic exponent comparisons
constexpr double kHalfPi = std::numbers::pi / 2.0;

// Gauss-Legendre nodes/weights on [-1, 1] (positive half; symmetric).
constexpr std::array<double, 8> kGl16X = {
    0.09501250983763744, 0.28160355077925891, 0.45801677765722739, 0.61787624440264375,
    0.75540440835500303, 0.86563120238783174, 0.94457502307323258, 0.98940093499164993};
constexpr std::array<double, 8> kGl16W = {
    0.18945061045506850, 0.18260341504492359, 0.16915651939500254, 0.14959598881657673,
    0.12462897125553387, 0.09515851168249278, 0.06225352393864789, 0.02715245941175409};
constexpr std::array<double, 4> kGl8X = {
    0.18343464249564980, 0.52553240991632899, 0.79666647741362674, 0.96028985649753623};
constexpr std::array<double, 4> kGl8W = {
    0.36268378337836198, 0.31370664587788729, 0.22238103445337447, 0.10122853629037626};

double log_sum_terms(const double* terms, int n) {
  double mx = -kInf;
  for (int i = 0; i < n; ++i) mx = std::max(mx, terms[i]);
  if (mx == -kInf) return -kInf;
  if (mx == kInf) return kInf;
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += std::exp(terms[i] - mx);
  return mx + std::log(s);
}

// log | e^a - 1 |
double log_expm1_abs(double a) {
  if (a > 36.0) return a;
  if (a > 0.0) return a + std::log1p(-std::exp(-a));
  return std::log(-std::expm1(a));
}

template <std::size_t N>
double gl_log(const LogDensity& log_g, double ya, double yb, const std::array<double, N>& xs,
              const std::array<double, N>& ws) {
  const double mid = 0.5 * (ya + yb);
  const double half = 0.5 * (yb - ya);
  const double lh = std::log(half);
  double terms[2 * N];
  int m = 0;
  for (std::size_t i = 0; i < N; ++i) {
    const double lw = std::log(ws[i]) + lh;
    terms[m++] = lw + log_g(mid + half * xs[i]);
    terms[m++] = lw + log_g(mid - half * xs[i]);
  }
  return log_sum_terms(terms, m);
}

double adaptive_gl_log(const LogDensity& log_g, double ya, double yb, double rel_tol, int depth) {
  const double l16 = gl_log(log_g, ya, yb, kGl16X, kGl16W);
  const double l8 = gl_log(log_g, ya, yb, kGl8X, kGl8W);
  if (l16 == -kInf && l8 == -kInf) return -kInf;
  if (l16 != kInf && l8 != kInf && l16 != -kInf) {
    const double rel = std::fabs(std::expm1(l8 - l16));
    if (rel <= rel_tol || depth >= 24) return l16;
  } else if (depth >= 24) {
    return l16;
  }
  const double mid = 0.5 * (ya + yb);
  return log_add_exp(adaptive_gl_log(log_g, ya, mid, rel_tol, depth + 1),
                     adaptive_gl_log(log_g, mid, yb, rel_tol, depth + 1));
}

}  // namespace

namespace detail {

double log_integral_segment(const LogDensity& log_g, double ya, double yb, double rel_tol) {
  if (!(yb > ya)) return -kInf;
  const double la = log_g(ya);
  const double lb = log_g(yb);
  const double lm = log_g(0.5 * (ya + yb));
  if (la == -kInf && lb == -kInf && lm == -kInf) return -kInf;

  double a = ya, b = yb;
  // steep monotone segments: restrict to the window that carries the mass
  if (std::isfinite(la) && std::isfinite(lb) && std::fabs(la - lb) > 40.0 &&
      lm <= std::max(la, lb) + 2.0 && lm >= std::min(la, lb) - 2.0) {
    const double slope = (lb - la) / (yb - ya);
    const double width = 46.0 / std::fabs(slope);
    if (width < (yb - ya)) {
      if (la > lb) {
        b = ya + width;
      } else {
        a = yb - width;
      }
    }
  }
  return adaptive_gl_log(log_g, a, b, rel_tol, 0);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// double-exponential rules
// ---------------------------------------------------------------------------

namespace {

struct DeOutcome {
  double value = 0.0;
  double err = kInf;
  bool converged = false;
};

// One trapezoidal level at step h; sums f over k*h for either all k (odd_only
// false) or odd k only.  `term` returns the weighted integrand; walking stops
// once terms are negligible versus `scale_hint` or the walk leaves the
// representable region (term returns nan to signal that).
template <typename TermFn>
double walk_level(const TermFn& term, double h, bool odd_only, double scale_hint) {
  double acc = 0.0;
  const double tiny = 1e-18;
  const int step = odd_only ? 2 : 1;
  for (int dir = -1; dir <= 1; dir += 2) {
    int consecutive_small = 0;
    for (int k = 1;; k += step) {
      const double u = dir * k * h;
      if (std::fabs(u) > 6.9) break;
      const double t = term(u);
      if (std::isnan(t)) break;
      acc += t;
      // the integrand along u can be hump-shaped: never stop on small terms
      // before the core of the transformed axis has been crossed
      if (std::fabs(u) < 3.5) continue;
      const double floor = tiny * std::max({std::fabs(acc), scale_hint, 1e-300});
      if (std::fabs(t) <= floor) {
        if (++consecutive_small >= 2) break;
      } else {
        consecutive_small = 0;
      }
    }
  }
  return acc;
}

template <typename TermFn>
DeOutcome de_levels(const TermFn& term, const QuadConfig& cfg) {
  DeOutcome out;
  double h = 1.0;
  double center = term(0.0);
  if (std::isnan(center)) center = 0.0;
  double prev = h * (center + walk_level(term, h, false, std::fabs(center)));
  const int max_level = std::clamp(cfg.max_depth, 3, 14);
  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    const double odd = walk_level(term, h, true, std::fabs(prev) / h);
    const double cur = 0.5 * prev + h * odd;
    const double diff = std::fabs(cur - prev);
    out.value = cur;
    out.err = diff;
    if (level >= 2 && diff <= std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(cur))) {
      out.converged = true;
      return out;
    }
    prev = cur;
  }
  return out;
}

// tanh-sinh on a finite interval (a, b); tolerates integrable endpoint
// singularities since the exact endpoints are never evaluated.
DeOutcome de_finite(const std::function<double(double)>& f, double a, double b,
                    const QuadConfig& cfg) {
  const double d = 0.5 * (b - a);
  auto term = [&](double u) -> double {
    const double w = kHalfPi * std::sinh(u);
    if (std::fabs(w) > 350.0) return std::nan("");
    const double cw = std::cosh(w);
    const double weight = d * kHalfPi * std::cosh(u) / (cw * cw);
    double t;
    if (u >= 0.0) {
      const double dist = d * 2.0 / (1.0 + std::exp(2.0 * w));
      t = b - dist;
      if (!(t < b)) return std::nan("");
    } else {
      const double dist = d * 2.0 / (1.0 + std::exp(-2.0 * w));
      t = a + dist;
      if (!(t > a)) return std::nan("");
    }
    const double v = f(t);
    if (!std::isfinite(v)) return std::nan("");
    return v * weight;
  };
  return de_levels(term, cfg);
}

// analytic mass of f below t_cut (head, e > -1) or above t_cut (tail, e < -1)
// matched to a local power law; exact for pure powers.  The exponent comes
// from the hint when present, else from a two-point slope of f itself.
struct MatchedPiece {
  double value = 0.0;
  double err = 0.0;
};

MatchedPiece matched_power_piece(const std::function<double(double)>& f, double t_cut,
                                 const std::optional<EdgeBehavior>& hint, bool head) {
  MatchedPiece out;
  const double fc = f(t_cut);
  if (!(fc > 0.0) || !std::isfinite(fc)) return out;  // vanishing beyond the cut
  double e;
  bool exact = false;
  if (hint && hint->rate == 0.0) {
    e = hint->pow;
    exact = true;
  } else {
    const double t2 = head ? 4.0 * t_cut : 0.25 * t_cut;
    const double f2 = f(t2);
    if (!(f2 > 0.0) || !std::isfinite(f2)) return out;
    e = std::log(f2 / fc) / std::log(t2 / t_cut);
  }
  if (head) {
    e = std::max(e, -0.999);
    out.value = fc * t_cut / (e + 1.0);
  } else {
    e = std::min(e, -1.001);
    out.value = fc * t_cut / (-e - 1.0);
  }
  out.err = exact ? out.value * 1e-12 : out.value * 0.05;
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// endpoint classification
// ---------------------------------------------------------------------------

EndpointClass classify_from_hint(const EdgeBehavior& b, Endpoint ep) {
  if (ep == Endpoint::Zero) {
    return b.pow <= -1.0 + kSymTol ? EndpointClass::Diverges : EndpointClass::Converges;
  }
  if (b.rate > kSymTol) return EndpointClass::Diverges;
  if (b.rate < -kSymTol) return EndpointClass::Converges;
  return b.pow >= -1.0 - kSymTol ? EndpointClass::Diverges : EndpointClass::Converges;
}

namespace {

struct FitResult {
  double slope = 0.0;
  double slope_first = 0.0;
  double slope_second = 0.0;
  bool ok = false;
};

FitResult fit_line(const std::vector<double>& x, const std::vector<double>& z) {
  FitResult r;
  const std::size_t n = x.size();
  if (n < 4) return r;
  auto ls = [&](std::size_t lo, std::size_t hi) {
    double sx = 0, sz = 0, sxx = 0, sxz = 0;
    const double m = double(hi - lo);
    for (std::size_t i = lo; i < hi; ++i) {
      sx += x[i];
      sz += z[i];
      sxx += x[i] * x[i];
      sxz += x[i] * z[i];
    }
    const double den = m * sxx - sx * sx;
    return den == 0.0 ? 0.0 : (m * sxz - sx * sz) / den;
  };
  r.slope = ls(0, n);
  r.slope_first = ls(0, n / 2);
  r.slope_second = ls(n / 2, n);
  r.ok = true;
  return r;
}

}  // namespace

namespace {

// three-way reading of a fitted slope at one endpoint
EndpointClass slope_class(double e, Endpoint ep) {
  if (ep == Endpoint::Zero) {
    if (e <= -1.0 - kGuardBand) return EndpointClass::Diverges;
    if (e >= -1.0 + kGuardBand) return EndpointClass::Converges;
  } else {
    if (e >= -1.0 + kGuardBand) return EndpointClass::Diverges;
    if (e <= -1.0 - kGuardBand) return EndpointClass::Converges;
  }
  return EndpointClass::Undetermined;
}

}  // namespace

EndpointClass classify_by_sniffing(const std::function<double(double)>& f, Endpoint ep,
                                   double scale, const QuadConfig& cfg, std::string* diagnostic) {
  const int m = std::max(6, cfg.sniff_points);
  const double ratio = ep == Endpoint::Zero ? std::pow(10.0, -0.75) : std::pow(10.0, 0.75);

  // walk toward the endpoint; stop at the first non-finite sample
  std::vector<double> ts, vs;
  bool saw_nan = false;
  for (int j = 0; j < m; ++j) {
    const double t = scale * std::pow(ratio, j);
    const double v = f(t);
    if (std::isinf(v) && v > 0.0) return EndpointClass::Diverges;  // unbounded sample
    if (std::isnan(v) || v < 0.0) {
      saw_nan = true;
      break;
    }
    ts.push_back(t);
    vs.push_back(v);
  }

  // trailing zeros: the function vanishes (or underflows) toward the endpoint
  std::size_t n = vs.size();
  while (n > 0 && vs[n - 1] == 0.0) --n;
  if (n == 0) return EndpointClass::Converges;
  const bool vanishing_tail = n < vs.size() || saw_nan;
  if (vanishing_tail) {
    // decide from the valid prefix: a collapse over a few decades cannot be a
    // borderline power
    if (n >= 3 && vs[n - 1] < vs[0] * 1e-60) return EndpointClass::Converges;
    if (n < vs.size() && vs.size() - n >= 2) return EndpointClass::Converges;
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (vs[j] == 0.0) {
      if (diagnostic) *diagnostic = "interior zero sample during endpoint sniffing";
      return EndpointClass::Undetermined;
    }
  }
  if (n < 6) {
    if (diagnostic) *diagnostic = "too few usable samples near the endpoint";
    return EndpointClass::Undetermined;
  }

  std::vector<double> lx(n), lz(n), tt(n);
  for (std::size_t j = 0; j < n; ++j) {
    lx[j] = std::log(ts[j]);
    lz[j] = std::log(vs[j]);
    tt[j] = ts[j];
  }
  // power model: both halves and the pooled fit must agree on the class
  const FitResult pw = fit_line(lx, lz);
  if (pw.ok) {
    const EndpointClass c1 = slope_class(pw.slope_first, ep);
    const EndpointClass c2 = slope_class(pw.slope_second, ep);
    const EndpointClass cp = slope_class(pw.slope, ep);
    if (c1 == c2 && c2 == cp) {
      if (cp != EndpointClass::Undetermined) return cp;
      if (std::fabs(pw.slope_first - pw.slope_second) <= 0.25) {
        if (diagnostic)
          *diagnostic = "sniffed exponent inside the guard band around -1 (slope " +
                        std::to_string(pw.slope) + ")";
        return EndpointClass::Undetermined;
      }
    }
  }

  if (ep == Endpoint::Infinity) {
    // exponential model log f ~ rate * t
    const FitResult ex = fit_line(tt, lz);
    const bool ex_consistent =
        ex.ok && std::fabs(ex.slope_first - ex.slope_second) <=
                     0.15 * std::max(std::fabs(ex.slope_first), std::fabs(ex.slope_second));
    if (ex_consistent && std::fabs(ex.slope) > 1e-12) {
      return ex.slope < 0.0 ? EndpointClass::Converges : EndpointClass::Diverges;
    }
    // accelerating decay or growth dominates any power correction
    if (ex.ok && ex.slope_first < -1e-12 && ex.slope_second < ex.slope_first)
      return EndpointClass::Converges;
    if (ex.ok && ex.slope_first > 1e-12 && ex.slope_second > ex.slope_first)
      return EndpointClass::Diverges;
  }
  if (diagnostic)
    *diagnostic = "slope fit inconsistent across scales (" + std::to_string(pw.slope_first) +
                  " vs " + std::to_string(pw.slope_second) + ")";
  return EndpointClass::Undetermined;
}

// ---------------------------------------------------------------------------
// integrate
// ---------------------------------------------------------------------------

QuadResult integrate(const std::function<double(double)>& f, double lo, double hi,
                     const QuadConfig& cfg, const EndpointHints& hints) {
  if (lo < 0.0 || !(hi > lo)) {
    if (hi == lo) return QuadResult::make_value(0.0, 0.0);
    throw std::invalid_argument("integrate: need 0 <= lo < hi");
  }
  const bool to_inf = std::isinf(hi);

  if (lo == 0.0) {
    std::string why;
    EndpointClass c;
    if (hints.at_zero) {
      c = classify_from_hint(*hints.at_zero, Endpoint::Zero);
    } else {
      const double scale = 0.5 * std::min(1.0, to_inf ? 1.0 : hi);
      c = classify_by_sniffing(f, Endpoint::Zero, scale, cfg, &why);
    }
    if (c == EndpointClass::Diverges) return QuadResult::divergent(Endpoint::Zero);
    if (c == EndpointClass::Undetermined) return QuadResult::undetermined("at zero: " + why);
  }
  if (to_inf) {
    std::string why;
    EndpointClass c;
    if (hints.at_inf) {
      c = classify_from_hint(*hints.at_inf, Endpoint::Infinity);
    } else {
      const double scale = std::max(1.0, 2.0 * lo);
      c = classify_by_sniffing(f, Endpoint::Infinity, scale, cfg, &why);
    }
    if (c == EndpointClass::Diverges) return QuadResult::divergent(Endpoint::Infinity);
    if (c == EndpointClass::Undetermined) return QuadResult::undetermined("at infinity: " + why);
  }

  if (lo > 0.0 && !to_inf) {
    const DeOutcome out = de_finite(f, lo, hi, cfg);
    return QuadResult::make_value(out.value, out.err);
  }

  // zero-touching and semi-infinite ranges: integrate in y = log t over the
  // representable window and add matched power pieces for the lost ends
  constexpr double kYCut = 600.0;
  auto g = [&f](double y) { return f(std::exp(y)) * std::exp(y); };
  const double ya = lo == 0.0 ? -kYCut : std::log(lo);
  const double yb = to_inf ? kYCut : std::log(hi);

  double value = 0.0, err = 0.0;
  if (lo == 0.0 && ya < yb) {
    const MatchedPiece head = matched_power_piece(f, std::exp(ya), hints.at_zero, true);
    value += head.value;
    err += head.err;
  }
  if (to_inf && yb > ya) {
    const MatchedPiece tail = matched_power_piece(f, std::exp(yb), hints.at_inf, false);
    value += tail.value;
    err += tail.err;
  }
  // split at y = 0 so each piece has its mass near one endpoint
  const double ymid = std::clamp(0.0, ya, yb);
  for (const auto& [a, b] : {std::pair{ya, ymid}, std::pair{ymid, yb}}) {
    if (!(b > a)) continue;
    const DeOutcome out = de_finite(g, a, b, cfg);
    value += out.value;
    err += out.err;
  }
  return QuadResult::make_value(value, err);
}

QuadResult integrate_piecewise(const std::function<double(double)>& f, double lo, double hi,
                               std::span<const double> breakpoints, const QuadConfig& cfg,
                               const EndpointHints& hints) {
  std::vector<double> cuts;
  for (double b : breakpoints) {
    if (b > lo && b < hi) cuts.push_back(b);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  double total = 0.0, err = 0.0;
  double a = lo;
  for (std::size_t i = 0; i <= cuts.size(); ++i) {
    const double b = i < cuts.size() ? cuts[i] : hi;
    EndpointHints h;
    if (a == lo) h.at_zero = hints.at_zero;
    if (std::isinf(b)) h.at_inf = hints.at_inf;
    const QuadResult r = integrate(f, a, b, cfg, h);
    if (!r.is_value()) return r;
    total += r.value;
    err += r.err_estimate;
    a = b;
  }
  return QuadResult::make_value(total, err);
}

// ---------------------------------------------------------------------------
// cumulative behavior propagation
// ---------------------------------------------------------------------------

std::optional<EdgeBehavior> prefix_behavior_at_zero(const std::optional<EdgeBehavior>& f_zero) {
  if (!f_zero) return std::nullopt;
  // integrand converges at 0 here: pow > -1
  return EdgeBehavior{0.0, f_zero->pow + 1.0, f_zero->logpow};
}

std::optional<EdgeBehavior> prefix_behavior_at_inf(const std::optional<EdgeBehavior>& f_inf) {
  if (!f_inf) return std::nullopt;
  const EdgeBehavior& b = *f_inf;
  if (b.rate < -kSymTol) return EdgeBehavior{};  // tends to the finite total
  if (b.rate > kSymTol) return EdgeBehavior{b.rate, b.pow, b.logpow};
  if (b.pow < -1.0 - kSymTol) return EdgeBehavior{};
  if (b.pow > -1.0 + kSymTol) return EdgeBehavior{0.0, b.pow + 1.0, b.logpow};
  return EdgeBehavior{0.0, 0.0, b.logpow + 1.0};  // log growth
}

std::optional<EdgeBehavior> suffix_behavior_at_zero(const std::optional<EdgeBehavior>& f_zero) {
  if (!f_zero) return std::nullopt;
  const EdgeBehavior& b = *f_zero;
  if (b.pow > -1.0 + kSymTol) return EdgeBehavior{};  // tends to the finite total
  if (b.pow < -1.0 - kSymTol) return EdgeBehavior{0.0, b.pow + 1.0, b.logpow};
  return EdgeBehavior{0.0, 0.0, b.logpow + 1.0};  // log(1/t) growth
}

std::optional<EdgeBehavior> suffix_behavior_at_inf(const std::optional<EdgeBehavior>& f_inf) {
  if (!f_inf) return std::nullopt;
  const EdgeBehavior& b = *f_inf;
  if (b.rate < -kSymTol) return EdgeBehavior{b.rate, b.pow, b.logpow};
  // integrand converges at infinity here: rate ~ 0, pow < -1
  return EdgeBehavior{0.0, b.pow + 1.0, b.logpow};
}

// ---------------------------------------------------------------------------
// CumulativeIntegral
// ---------------------------------------------------------------------------

namespace {

double segment_tolerance(const QuadConfig& cfg) {
  return std::min(1e-11, 0.01 * cfg.rel_tol);
}

// log of integral of f over (0, T] matched to a local power law at T.
double matched_head(const LogDensity& log_f, double T, double pow_at_zero) {
  const double e = std::max(pow_at_zero, -0.999);
  return log_f(T) + std::log(T) - std::log(e + 1.0);
}

// log of integral of f over [T, inf) from the at-infinity record.
double matched_tail(const LogDensity& log_f, double T, const EdgeBehavior& b) {
  if (b.rate < -kSymTol) {
    double corr = 0.0;
    const double arg = b.pow / (b.rate * T);
    if (arg > -0.9) corr = std::log1p(arg);
    return log_f(T) - std::log(-b.rate) + corr;
  }
  const double e = std::min(b.pow, -1.001);
  return log_f(T) + std::log(T) - std::log(-e - 1.0);
}

// numerically estimated log-log slope of the density near t
double local_slope(const LogDensity& log_f, double t, double toward) {
  const double t2 = toward < t ? t * 0.5 : t * 2.0;
  const double d = log_f(t2) - log_f(t);
  return d / (std::log(t2) - std::log(t));
}

}  // namespace

CumulativeIntegral::BuildOutcome CumulativeIntegral::build(Side side, LogDensity log_f,
                                                           const EndpointHints& hints,
                                                           const QuadConfig& cfg,
                                                           const GridSpec& grid) {
  BuildOutcome outcome;
  auto f = [log_f](double t) { return std::exp(log_f(t)); };

  const Endpoint defining = side == Side::Prefix ? Endpoint::Zero : Endpoint::Infinity;
  const std::optional<EdgeBehavior>& hint =
      side == Side::Prefix ? hints.at_zero : hints.at_inf;
  std::string why;
  EndpointClass c;
  if (hint) {
    c = classify_from_hint(*hint, defining);
    if (c == EndpointClass::Diverges) why = "declared endpoint exponent implies divergence";
  } else {
    const double scale = defining == Endpoint::Zero ? 0.5 : std::max(1.0, 2.0 * grid.t_lo);
    c = classify_by_sniffing(f, defining, scale, cfg, &why);
  }
  outcome.classification = c;
  outcome.diagnostic = why;
  if (c != EndpointClass::Converges) return outcome;

  auto ci = std::shared_ptr<CumulativeIntegral>(new CumulativeIntegral());
  ci->side_ = side;
  ci->grid_ = grid;
  ci->log_f_ = log_f;
  ci->hints_ = hints;
  ci->cfg_ = cfg;
  ci->at_zero_ = side == Side::Prefix ? prefix_behavior_at_zero(hints.at_zero)
                                      : suffix_behavior_at_zero(hints.at_zero);
  ci->at_inf_ = side == Side::Prefix ? prefix_behavior_at_inf(hints.at_inf)
                                     : suffix_behavior_at_inf(hints.at_inf);

  const int n = std::max(grid.nodes, 8);
  const double ya = std::log(grid.t_lo);
  const double yb = std::log(grid.t_hi);
  std::vector<double> ys(n);
  for (int j = 0; j < n; ++j) ys[j] = ya + (yb - ya) * j / (n - 1);

  auto log_g = [&log_f](double y) { return log_f(std::exp(y)) + y; };
  const double seg_tol = segment_tolerance(cfg);
  std::vector<double> segs(n - 1);
  for (int j = 0; j + 1 < n; ++j)
    segs[j] = detail::log_integral_segment(log_g, ys[j], ys[j + 1], seg_tol);

  std::vector<double> vals(n);
  if (side == Side::Prefix) {
    double log_head;
    if (hints.at_zero) {
      log_head = matched_head(log_f, grid.t_lo, hints.at_zero->pow);
    } else {
      const QuadResult r = integrate(f, 0.0, grid.t_lo, cfg);
      log_head = (r.is_value() && r.value > 0.0)
                     ? std::log(r.value)
                     : matched_head(log_f, grid.t_lo, local_slope(log_f, grid.t_lo, 0.0));
    }
    vals[0] = log_head;
    for (int j = 1; j < n; ++j) vals[j] = log_add_exp(vals[j - 1], segs[j - 1]);
  } else {
    double log_tail;
    if (hints.at_inf) {
      log_tail = matched_tail(log_f, grid.t_hi, *hints.at_inf);
    } else {
      const QuadResult r = integrate(f, grid.t_hi, kInf, cfg);
      log_tail = (r.is_value() && r.value > 0.0)
                     ? std::log(r.value)
                     : matched_tail(log_f, grid.t_hi,
                                    EdgeBehavior{0.0, local_slope(log_f, grid.t_hi, kInf), 0.0});
    }
    vals[n - 1] = log_tail;
    for (int j = n - 2; j >= 0; --j) vals[j] = log_add_exp(vals[j + 1], segs[j]);
  }
  ci->log_at_lo_ = vals.front();
  ci->log_at_hi_ = vals.back();
  ci->interp_ = MonotoneCubic(ys, vals);
  outcome.integral = ci;
  return outcome;
}

double CumulativeIntegral::log_value(double t) const {
  if (t <= 0.0) return side_ == Side::Prefix ? -kInf : log_value(grid_.t_lo * 1e-8);
  const double y = std::log(t);
  const double ya = std::log(grid_.t_lo);
  const double yb = std::log(grid_.t_hi);
  if (y >= ya && y <= yb) return interp_(y);

  if (side_ == Side::Prefix) {
    if (y < ya) {
      const double e = hints_.at_zero ? hints_.at_zero->pow : local_slope(log_f_, t, 0.0);
      return matched_head(log_f_, t, e);
    }
    // above the grid: add the piece over [t_hi, t]
    double piece;
    if (hints_.at_inf) {
      const EdgeBehavior& b = *hints_.at_inf;
      if (b.rate < -kSymTol) {
        piece = log_f_(grid_.t_hi) - std::log(-b.rate) +
                std::log1p(-std::exp(b.rate * (t - grid_.t_hi)));
      } else if (b.rate > kSymTol) {
        piece = log_f_(t) - std::log(b.rate);
      } else if (std::fabs(b.pow + 1.0) < kSymTol) {
        piece = log_f_(grid_.t_hi) + yb + std::log(y - yb);
      } else {
        const double a = (b.pow + 1.0) * (y - yb);
        piece = log_f_(grid_.t_hi) + yb - std::log(std::fabs(b.pow + 1.0)) + log_expm1_abs(a);
      }
    } else {
      const double e = local_slope(log_f_, grid_.t_hi, kInf);
      const double a = (e + 1.0) * (y - yb);
      piece = log_f_(grid_.t_hi) + yb - std::log(std::max(std::fabs(e + 1.0), 1e-8)) +
              log_expm1_abs(a);
    }
    return log_add_exp(log_at_hi_, piece);
  }

  // suffix
  if (y > yb) {
    if (hints_.at_inf) return matched_tail(log_f_, t, *hints_.at_inf);
    return matched_tail(log_f_, t, EdgeBehavior{0.0, local_slope(log_f_, t, kInf), 0.0});
  }
  // below the grid: add the piece over [t, t_lo]
  double piece;
  const double e = hints_.at_zero ? hints_.at_zero->pow : local_slope(log_f_, t, 0.0);
  if (std::fabs(e + 1.0) < kSymTol) {
    piece = log_f_(grid_.t_lo) + ya + std::log(ya - y);
  } else {
    const double a = (e + 1.0) * (y - ya);
    piece = log_f_(grid_.t_lo) + ya - std::log(std::fabs(e + 1.0)) + log_expm1_abs(a);
  }
  return log_add_exp(log_at_lo_, piece);
}

// ---------------------------------------------------------------------------
// integrate_weighted_inner
// ---------------------------------------------------------------------------

QuadResult integrate_weighted_inner(std::span<const LogFactor> factors, double lo, double hi,
                                    const QuadConfig& cfg) {
  if (factors.empty()) throw std::invalid_argument("integrate_weighted_inner: no factors");
  if (lo < 0.0 || !(hi > lo)) {
    if (hi == lo) return QuadResult::make_value(0.0, 0.0);
    throw std::invalid_argument("integrate_weighted_inner: bad range");
  }

  std::vector<LogFactor> fs(factors.begin(), factors.end());
  auto log_f = [fs](double t) {
    double s = 0.0;
    for (const auto& fac : fs) s += fac.exponent * fac.log_f(t);
    return s;
  };
  EndpointHints hints{EdgeBehavior{}, EdgeBehavior{}};
  for (const auto& fac : fs) {
    if (hints.at_zero) {
      if (fac.hints.at_zero)
        hints.at_zero = hints.at_zero->times(fac.hints.at_zero->scaled(fac.exponent));
      else
        hints.at_zero.reset();
    }
    if (hints.at_inf) {
      if (fac.hints.at_inf)
        hints.at_inf = hints.at_inf->times(fac.hints.at_inf->scaled(fac.exponent));
      else
        hints.at_inf.reset();
    }
  }
  auto f = [log_f](double t) { return std::exp(log_f(t)); };

  const bool to_inf = std::isinf(hi);
  if (lo == 0.0) {
    std::string why;
    EndpointClass c = hints.at_zero
                          ? classify_from_hint(*hints.at_zero, Endpoint::Zero)
                          : classify_by_sniffing(f, Endpoint::Zero, 0.5, cfg, &why);
    if (c == EndpointClass::Diverges) return QuadResult::divergent(Endpoint::Zero);
    if (c == EndpointClass::Undetermined) return QuadResult::undetermined("at zero: " + why);
  }
  if (to_inf) {
    std::string why;
    EndpointClass c = hints.at_inf
                          ? classify_from_hint(*hints.at_inf, Endpoint::Infinity)
                          : classify_by_sniffing(f, Endpoint::Infinity, std::max(1.0, 2.0 * lo),
                                                 cfg, &why);
    if (c == EndpointClass::Diverges) return QuadResult::divergent(Endpoint::Infinity);
    if (c == EndpointClass::Undetermined) return QuadResult::undetermined("at infinity: " + why);
  }

  const CumulativeIntegral::GridSpec grid;
  const double ta = lo == 0.0 ? grid.t_lo : lo;
  const double tb = to_inf ? std::max(grid.t_hi, 2.0 * ta) : hi;
  const double ya = std::log(ta);
  const double yb = std::log(tb);
  auto log_g = [&log_f](double y) { return log_f(std::exp(y)) + y; };

  const double seg_tol = segment_tolerance(cfg);
  const double h_ref = std::log(grid.t_hi / grid.t_lo) / (grid.nodes - 1);
  const int nseg = std::max(1, static_cast<int>(std::ceil((yb - ya) / h_ref)));
  double acc = -kInf;
  for (int j = 0; j < nseg; ++j) {
    const double a = ya + (yb - ya) * j / nseg;
    const double b = ya + (yb - ya) * (j + 1) / nseg;
    acc = log_add_exp(acc, detail::log_integral_segment(log_g, a, b, seg_tol));
  }
  if (lo == 0.0) {
    const double e = hints.at_zero ? hints.at_zero->pow : local_slope(log_f, ta, 0.0);
    acc = log_add_exp(acc, matched_head(log_f, ta, e));
  }
  if (to_inf) {
    double tail;
    if (hints.at_inf) {
      tail = matched_tail(log_f, tb, *hints.at_inf);
    } else {
      const QuadResult r = integrate(f, tb, kInf, cfg);
      tail = (r.is_value() && r.value > 0.0)
                 ? std::log(r.value)
                 : matched_tail(log_f, tb, EdgeBehavior{0.0, local_slope(log_f, tb, kInf), 0.0});
    }
    acc = log_add_exp(acc, tail);
  }
  const double v = std::exp(acc);
  return QuadResult::make_value(v, v * std::max(8.0 * seg_tol, 1e-12));
}

}  // namespace bihardy

#include "bihardy/conditions.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "bihardy/mathutil.hpp"

namespace bihardy {

namespace {

constexpr double kGolden = 0.6180339887498949;

double golden_max(const std::function<double(double)>& f, double a, double b, int iters = 90) {
  double x1 = b - kGolden * (b - a);
  double x2 = a + kGolden * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters && (b - a) > 1e-14 * std::max(1.0, std::fabs(a)); ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGolden * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGolden * (b - a);
      f1 = f(x1);
    }
  }
  return std::max(f1, f2);
}

struct ComposedSup {
  std::function<double(double)> log_g;
  std::optional<EdgeBehavior> zero_edge;
  std::optional<EdgeBehavior> inf_edge;
};

ComposedSup compose(std::span<const SupFactor> factors) {
  std::vector<SupFactor> fs(factors.begin(), factors.end());
  ComposedSup c;
  c.log_g = [fs](double t) {
    double s = 0.0;
    for (const auto& f : fs) {
      const double v = f.log_f(t);
      if (v == kInf) return kInf;
      s += f.exponent * v;
    }
    return s;
  };
  c.zero_edge = EdgeBehavior{};
  c.inf_edge = EdgeBehavior{};
  for (const auto& f : fs) {
    if (c.zero_edge) {
      if (f.at_zero)
        c.zero_edge = c.zero_edge->times(f.at_zero->scaled(f.exponent));
      else
        c.zero_edge.reset();
    }
    if (c.inf_edge) {
      if (f.at_inf)
        c.inf_edge = c.inf_edge->times(f.at_inf->scaled(f.exponent));
      else
        c.inf_edge.reset();
    }
  }
  return c;
}

double log_sup_impl(const std::function<double(double)>& log_g,
                    const std::optional<EdgeBehavior>& zero_edge,
                    const std::optional<EdgeBehavior>& inf_edge, const SupOptions& opt) {
  if (zero_edge && zero_edge->grows_at_zero()) return kInf;
  if (inf_edge && inf_edge->grows_at_inf()) return kInf;

  const int n = std::max(opt.coarse_nodes, 9);
  const double ya = std::log(opt.t_lo);
  const double yb = std::log(opt.t_hi);
  std::vector<double> ys(n), vs(n);
  for (int j = 0; j < n; ++j) {
    ys[j] = ya + (yb - ya) * j / (n - 1);
    vs[j] = log_g(std::exp(ys[j]));
    if (vs[j] == kInf) return kInf;
  }

  // monotone climb into a grid edge
  const double h = (yb - ya) / (n - 1);
  auto edge_climb = [&](bool at_inf) {
    int last = n - 1;
    bool increasing = true;
    for (int s = 0; s < 5; ++s) {
      const int j = at_inf ? last - s : s;
      const int jn = at_inf ? j - 1 : j + 1;
      if (!(vs[j] > vs[jn])) {
        increasing = false;
        break;
      }
    }
    if (!increasing) return false;
    const int jo = at_inf ? n - 1 : 0;
    const int ji = at_inf ? n - 6 : 5;
    const double slope = std::fabs((vs[jo] - vs[ji]) / (ys[jo] - ys[ji]));
    return slope > opt.edge_slope;
  };
  if (!inf_edge && edge_climb(true)) return kInf;
  if (!zero_edge && edge_climb(false)) return kInf;

  double best = -kInf;
  int best_j = 0;
  for (int j = 0; j < n; ++j) {
    if (vs[j] > best) {
      best = vs[j];
      best_j = j;
    }
  }
  auto refine = [&](int j) {
    const double a = ys[std::max(0, j - 1)];
    const double b = ys[std::min(n - 1, j + 1)];
    const double m = golden_max([&](double y) { return log_g(std::exp(y)); }, a, b);
    best = std::max(best, m);
  };
  refine(best_j);
  for (int j = 1; j + 1 < n; ++j) {
    if (vs[j] > vs[j - 1] && vs[j] >= vs[j + 1] && j != best_j) refine(j);
  }
  return best;
}

EndpointHints hints_from(const std::optional<EdgeBehavior>& z,
                         const std::optional<EdgeBehavior>& inf) {
  EndpointHints h;
  h.at_zero = z;
  h.at_inf = inf;
  return h;
}

// Suffix integral s -> integral over [s, inf) of
//   u1^{r/q} * v1_j^{r/q'} * v_dual_j, the inner kernel of B2/B3/B5/B6.
// Returns null when the defining tail diverges (the integral is then
// identically +inf); throws UndeterminedError on classification failure.
std::shared_ptr<const CumulativeIntegral> inner_suffix(const CumulativeKernels& ker,
                                                       const LineWeights& lw,
                                                       const ExponentSystem& exps, int j,
                                                       double r, const QuadConfig& cfg) {
  const double qc = *exps.q_conj();
  const double eu = r / exps.q();
  const double ev = r / qc;
  auto log_w = [&ker, &lw, j, eu, ev](double s) {
    return eu * ker.log_u1(s) + ev * ker.log_v1(j, s) + lw.log_v_dual_of(j)(s);
  };
  EndpointHints h;
  {
    auto uz = ker.u1_behavior_at_zero();
    auto vz = ker.v1_behavior_at_zero(j);
    auto dz = lw.v_dual_hints_of(j).at_zero;
    if (uz && vz && dz) h.at_zero = uz->scaled(eu).times(vz->scaled(ev)).times(*dz);
    auto ui = ker.u1_behavior_at_inf();
    auto vi = ker.v1_behavior_at_inf(j);
    auto di = lw.v_dual_hints_of(j).at_inf;
    if (ui && vi && di) h.at_inf = ui->scaled(eu).times(vi->scaled(ev)).times(*di);
  }
  auto out = CumulativeIntegral::build(CumulativeIntegral::Side::Suffix, log_w, h, cfg);
  if (out.classification == EndpointClass::Undetermined)
    throw UndeterminedError(Endpoint::Infinity, "inner kernel: " + out.diagnostic);
  return out.integral;
}

}  // namespace

double sup_over_t(const std::function<double(double)>& g, const SupOptions& opt) {
  auto log_g = [&g](double t) {
    const double v = g(t);
    if (v == kInf) return kInf;
    if (!(v > 0.0)) return -kInf;
    return std::log(v);
  };
  const double ls = log_sup_impl(log_g, std::nullopt, std::nullopt, opt);
  return std::exp(ls);
}

double log_sup_of_product(std::span<const SupFactor> factors, const SupOptions& opt) {
  const ComposedSup c = compose(factors);
  return log_sup_impl(c.log_g, c.zero_edge, c.inf_edge, opt);
}

double eval_B1(const CumulativeKernels& ker, const ExponentSystem& exps) {
  if (ker.u1_divergent() || ker.v1_divergent(1) || ker.v1_divergent(2)) return kInf;
  const std::array<SupFactor, 3> factors = {
      SupFactor{[&ker](double t) { return ker.log_u1(t); }, 1.0 / exps.q(),
                ker.u1_behavior_at_zero(), ker.u1_behavior_at_inf()},
      SupFactor{[&ker](double t) { return ker.log_v1(1, t); }, 1.0 / exps.p1_conj(),
                ker.v1_behavior_at_zero(1), ker.v1_behavior_at_inf(1)},
      SupFactor{[&ker](double t) { return ker.log_v1(2, t); }, 1.0 / exps.p2_conj(),
                ker.v1_behavior_at_zero(2), ker.v1_behavior_at_inf(2)},
  };
  return std::exp(log_sup_of_product(factors));
}

namespace {

// shared body of B2 (j = 2, outer v index 1) and B3 (j = 1, outer v index 2)
double eval_B23(const CumulativeKernels& ker, const LineWeights& lw, const ExponentSystem& exps,
                int inner_j, double r, const QuadConfig& cfg) {
  if (ker.u1_divergent() || ker.v1_divergent(1) || ker.v1_divergent(2)) return kInf;
  const int outer_j = inner_j == 2 ? 1 : 2;
  auto inner = inner_suffix(ker, lw, exps, inner_j, r, cfg);
  if (!inner) return kInf;  // inner tail diverges: the sup is +inf for every t
  const std::array<SupFactor, 2> factors = {
      SupFactor{[&ker, outer_j](double t) { return ker.log_v1(outer_j, t); },
                1.0 / exps.p_conj(outer_j), ker.v1_behavior_at_zero(outer_j),
                ker.v1_behavior_at_inf(outer_j)},
      SupFactor{[inner](double t) { return inner->log_value(t); }, 1.0 / r,
                inner->behavior_at_zero(), inner->behavior_at_inf()},
  };
  return std::exp(log_sup_of_product(factors));
}

}  // namespace

double eval_B2(const CumulativeKernels& ker, const LineWeights& lw, const ExponentSystem& exps,
               const QuadConfig& cfg) {
  const auto r2 = exps.r2();
  if (!r2) throw std::domain_error("eval_B2: r2 undefined (needs q < p2)");
  return eval_B23(ker, lw, exps, 2, *r2, cfg);
}

double eval_B3(const CumulativeKernels& ker, const LineWeights& lw, const ExponentSystem& exps,
               const QuadConfig& cfg) {
  const auto r1 = exps.r1();
  if (!r1) throw std::domain_error("eval_B3: r1 undefined (needs q < p1)");
  return eval_B23(ker, lw, exps, 1, *r1, cfg);
}

double eval_B4(const CumulativeKernels& ker, const LineWeights& lw, const ExponentSystem& exps,
               const QuadConfig& cfg) {
  const auto k = exps.k();
  if (!k) throw std::domain_error("eval_B4: k undefined");
  if (ker.u1_divergent() || ker.v1_divergent(1) || ker.v1_divergent(2)) return kInf;
  const std::array<LogFactor, 4> factors = {
      LogFactor{[&ker](double t) { return ker.log_u1(t); }, *k / exps.p1() + *k / exps.p2(),
                hints_from(ker.u1_behavior_at_zero(), ker.u1_behavior_at_inf())},
      LogFactor{[&ker](double t) { return ker.log_v1(1, t); }, *k / exps.p1_conj(),
                hints_from(ker.v1_behavior_at_zero(1), ker.v1_behavior_at_inf(1))},
      LogFactor{[&ker](double t) { return ker.log_v1(2, t); }, *k / exps.p2_conj(),
                hints_from(ker.v1_behavior_at_zero(2), ker.v1_behavior_at_inf(2))},
      LogFactor{lw.log_u, 1.0, lw.u_hints},
  };
  const QuadResult r = integrate_weighted_inner(factors, 0.0, kInf, cfg);
  if (r.is_divergent()) return kInf;
  if (r.is_undetermined()) throw UndeterminedError(r.endpoint, "B4: " + r.diagnostic);
  return std::pow(r.value, 1.0 / *k);
}

namespace {

// shared body of B5 and B6: outer integral of inner^{outer_exp} * v1^{k/r'} * v_dual
double eval_B56(const CumulativeKernels& ker, const LineWeights& lw, const ExponentSystem& exps,
                int inner_j, double r_inner, double outer_exp_r, const QuadConfig& cfg) {
  const double k = *exps.k();
  if (ker.u1_divergent() || ker.v1_divergent(1) || ker.v1_divergent(2)) return kInf;
  const int outer_j = inner_j == 2 ? 1 : 2;
  auto inner = inner_suffix(ker, lw, exps, inner_j, r_inner, cfg);
  if (!inner) return kInf;
  const double r_conj = r_inner / (r_inner - 1.0);
  const std::array<LogFactor, 3> factors = {
      LogFactor{[inner](double t) { return inner->log_value(t); }, k / outer_exp_r,
                hints_from(inner->behavior_at_zero(), inner->behavior_at_inf())},
      LogFactor{[&ker, outer_j](double t) { return ker.log_v1(outer_j, t); }, k / r_conj,
                hints_from(ker.v1_behavior_at_zero(outer_j), ker.v1_behavior_at_inf(outer_j))},
      LogFactor{lw.log_v_dual_of(outer_j), 1.0, lw.v_dual_hints_of(outer_j)},
  };
  const QuadResult r = integrate_weighted_inner(factors, 0.0, kInf, cfg);
  if (r.is_divergent()) return kInf;
  if (r.is_undetermined()) throw UndeterminedError(r.endpoint, "B5/B6: " + r.diagnostic);
  return std::pow(r.value, 1.0 / k);
}

}  // namespace

double eval_B5(const CumulativeKernels& ker, const LineWeights& lw, const ExponentSystem& exps,
               const QuadConfig& cfg) {
  const auto k = exps.k();
  const auto r2 = exps.r2();
  if (!k || !r2) throw std::domain_error("eval_B5: needs k and r2");
  // inner over index 2 with r2; outer power k/r2; conjugate r2' on v11
  return eval_B56(ker, lw, exps, 2, *r2, *r2, cfg);
}

double eval_B6(const CumulativeKernels& ker, const LineWeights& lw, const ExponentSystem& exps,
               bool verbatim_outer, const QuadConfig& cfg) {
  const auto k = exps.k();
  const auto r1 = exps.r1();
  const auto r2 = exps.r2();
  if (!k || !r1 || !r2) throw std::domain_error("eval_B6: needs k, r1, r2");
  // inner over index 1 with r1; printed outer power is k/r2, the symmetric
  // reading is k/r1; conjugate r1' on v12 either way
  const double outer_r = verbatim_outer ? *r2 : *r1;
  const double k_ = *k;
  if (ker.u1_divergent() || ker.v1_divergent(1) || ker.v1_divergent(2)) return kInf;
  auto inner = inner_suffix(ker, lw, exps, 1, *r1, cfg);
  if (!inner) return kInf;
  const double r1_conj = *r1 / (*r1 - 1.0);
  const std::array<LogFactor, 3> factors = {
      LogFactor{[inner](double t) { return inner->log_value(t); }, k_ / outer_r,
                hints_from(inner->behavior_at_zero(), inner->behavior_at_inf())},
      LogFactor{[&ker](double t) { return ker.log_v1(2, t); }, k_ / r1_conj,
                hints_from(ker.v1_behavior_at_zero(2), ker.v1_behavior_at_inf(2))},
      LogFactor{lw.log_v_dual_of(2), 1.0, lw.v_dual_hints_of(2)},
  };
  const QuadResult r = integrate_weighted_inner(factors, 0.0, kInf, cfg);
  if (r.is_divergent()) return kInf;
  if (r.is_undetermined()) throw UndeterminedError(r.endpoint, "B6: " + r.diagnostic);
  return std::pow(r.value, 1.0 / k_);
}

std::optional<std::pair<double, double>> bracket_constant(const CaseId& case_id,
                                                          const std::map<std::string, double>& b,
                                                          const ExponentSystem& exps) {
  auto get = [&b](const char* name) -> std::optional<double> {
    const auto it = b.find(name);
    if (it == b.end() || !std::isfinite(it->second)) return std::nullopt;
    return it->second;
  };
  const double q = exps.q();
  switch (case_id.kind) {
    case CaseId::Kind::I: {
      const auto b1 = get("B1");
      if (!b1) return std::nullopt;
      const double hi = 8.0 * std::pow(1.0 + std::pow(4.0, q), 1.0 / q) * *b1;
      return std::make_pair(*b1, hi);
    }
    case CaseId::Kind::II: {
      const auto b1 = get("B1");
      const auto b2 = get("B2");
      if (!b1 || !b2) return std::nullopt;
      const double qc = *exps.q_conj();
      const double r2 = *exps.r2();
      const double lo =
          std::max(*b1, std::pow(q, 1.0 / q) *
                            std::pow(q * exps.p2_conj() / r2, 1.0 / qc) * *b2);
      const double hi =
          8.0 * (*b1 + std::pow(q, 1.0 / q) * std::pow(exps.p2_conj(), 1.0 / qc) * *b2);
      return std::make_pair(lo, hi);
    }
    case CaseId::Kind::III: {
      const auto b1 = get("B1");
      const auto b2 = get("B2");
      const auto b3 = get("B3");
      if (!b1 || !b2 || !b3) return std::nullopt;
      const double qc = *exps.q_conj();
      const double r1 = *exps.r1();
      const double r2 = *exps.r2();
      const double q_pow = std::pow(q, 1.0 / q);
      const double lo =
          std::max({*b1, q_pow * std::pow(q * exps.p2_conj() / r2, 1.0 / qc) * *b2,
                    q_pow * std::pow(q * exps.p1_conj() / r1, 1.0 / qc) * *b3});
      const double hi = 8.0 * (8.0 * *b3 +
                               4.0 * std::pow(exps.p1_conj() / r1, 1.0 / r1) * *b1 +
                               q_pow * std::pow(exps.p2_conj(), 1.0 / qc) * *b2);
      return std::make_pair(lo, hi);
    }
    default:
      return std::nullopt;
  }
}

ConditionReport eval_report(const RadialGeometry& geo, const WeightTriple& w,
                            const ExponentSystem& exps, const QuadConfig& cfg) {
  ConditionReport report;
  report.case_id = dispatch_case(exps);
  if (report.case_id.kind == CaseId::Kind::NotCovered) {
    report.diagnostics.push_back(report.case_id.reason);
    return report;
  }
  if (report.case_id.swapped) {
    // exploit the symmetry of the operator in (f1, f2): evaluate the
    // transposed datum in the stated orientation and mark the swap
    ConditionReport inner =
        eval_report(geo, WeightTriple{w.u, w.v2, w.v1}, exps.transposed(), cfg);
    inner.case_id.swapped = true;
    inner.diagnostics.push_back("roles of (p1, v1) and (p2, v2) exchanged to match the stated case II form");
    return inner;
  }

  try {
    const LineWeights lw = build_line_weights(geo, w, exps);
    const CumulativeKernels ker = kernels(lw, cfg);
    switch (report.case_id.kind) {
      case CaseId::Kind::I:
        report.required = {"B1"};
        report.b["B1"] = eval_B1(ker, exps);
        break;
      case CaseId::Kind::II:
        report.required = {"B1", "B2"};
        report.b["B1"] = eval_B1(ker, exps);
        report.b["B2"] = eval_B2(ker, lw, exps, cfg);
        break;
      case CaseId::Kind::III:
        report.required = {"B1", "B2", "B3"};
        report.b["B1"] = eval_B1(ker, exps);
        report.b["B2"] = eval_B2(ker, lw, exps, cfg);
        report.b["B3"] = eval_B3(ker, lw, exps, cfg);
        break;
      case CaseId::Kind::IV:
        report.required = {"B4", "B5", "B6"};
        report.b["B4"] = eval_B4(ker, lw, exps, cfg);
        report.b["B5"] = eval_B5(ker, lw, exps, cfg);
        report.b["B6"] = eval_B6(ker, lw, exps, true, cfg);
        report.b["B6_alt"] = eval_B6(ker, lw, exps, false, cfg);
        report.diagnostics.push_back(
            "B6 evaluated under both readings of the outer exponent (k/r2 printed, k/r1 symmetric)");
        break;
      default:
        break;
    }
  } catch (const UndeterminedError& e) {
    report.undetermined = true;
    report.holds = false;
    report.diagnostics.push_back(std::string("undetermined: ") + e.what());
    return report;
  }

  report.holds = true;
  for (const std::string& name : report.required) {
    if (!std::isfinite(report.b.at(name))) report.holds = false;
  }
  if (report.holds) report.bracket = bracket_constant(report.case_id, report.b, exps);
  return report;
}

}  // namespace bihardy

#include "bihardy/classify.hpp"

#include <algorithm>
#include <cmath>

namespace bihardy {

namespace {

constexpr double kBoundaryTol = 1e-9;

enum class Check { Pass, Fail, Borderline };

Check strict(double value, double bound, bool want_less) {
  const double slack = want_less ? bound - value : value - bound;
  if (slack > kBoundaryTol) return Check::Pass;
  if (slack < -kBoundaryTol) return Check::Fail;
  return Check::Borderline;
}

ConditionSlack record(std::vector<ConditionSlack>& out, const std::string& name, double value,
                      const char* relation, double bound, Check c) {
  ConditionSlack s{name, value, relation, bound, c == Check::Pass, c == Check::Borderline};
  out.push_back(s);
  return s;
}

Verdict not_covered(const CaseId& id, std::string why) {
  Verdict v;
  v.kind = Verdict::Kind::NotCovered;
  v.reason = std::move(why);
  (void)id;
  return v;
}

}  // namespace

std::string to_string(Verdict::Kind kind) {
  switch (kind) {
    case Verdict::Kind::Holds: return "Holds";
    case Verdict::Kind::Fails: return "Fails";
    case Verdict::Kind::HoldsSufficient: return "HoldsSufficient";
    case Verdict::Kind::Unknown: return "Unknown";
    case Verdict::Kind::NotCovered: return "NotCovered";
  }
  return "?";
}

Verdict classify_homogeneous(const PowerDatum& datum) {
  const CaseId id = dispatch_case(datum.exps);
  if (id.kind != CaseId::Kind::I && id.kind != CaseId::Kind::II)
    return not_covered(id, "power-weight classification covers cases I and II only (case " +
                               to_string(id.kind) + ")");
  if (id.kind == CaseId::Kind::II && id.swapped) {
    PowerDatum t{datum.geometry, datum.alpha, datum.beta2, datum.beta1,
                 datum.exps.transposed()};
    Verdict v = classify_homogeneous(t);
    v.reason += v.reason.empty() ? "roles of indices 1 and 2 exchanged"
                                 : "; roles of indices 1 and 2 exchanged";
    return v;
  }

  const ExponentSystem& e = datum.exps;
  const double Q = datum.geometry.dim();
  const double m1 = datum.beta1 * (1.0 - e.p1_conj()) + Q;
  const double m2 = datum.beta2 * (1.0 - e.p2_conj()) + Q;
  const double au = datum.alpha + Q;
  const double balance = au / e.q() + m1 / e.p1_conj() + m2 / e.p2_conj();

  Verdict v;
  bool borderline = false;
  auto fail = [&v](const std::string& why) {
    v.kind = Verdict::Kind::Fails;
    v.reason = why;
  };

  if (id.kind == CaseId::Kind::I) {
    const Check c1 = strict(au, 0.0, true);
    record(v.conditions, "alpha+Q", au, "<", 0.0, c1);
    const Check c2 = strict(m1, 0.0, false);
    record(v.conditions, "beta1(1-p1')+Q", m1, ">", 0.0, c2);
    const Check c3 = strict(m2, 0.0, false);
    record(v.conditions, "beta2(1-p2')+Q", m2, ">", 0.0, c3);
    const bool balanced = std::fabs(balance) < kBoundaryTol;
    record(v.conditions, "exponent balance", balance, "==", 0.0,
           balanced ? Check::Pass : Check::Fail);
    if (c1 == Check::Fail) { fail("tail integral of u diverges: alpha+Q >= 0"); return v; }
    if (c2 == Check::Fail) { fail("mass integral of v1 diverges: beta1(1-p1')+Q <= 0"); return v; }
    if (c3 == Check::Fail) { fail("mass integral of v2 diverges: beta2(1-p2')+Q <= 0"); return v; }
    if (!balanced) { fail("exponent balance nonzero"); return v; }
    borderline = c1 == Check::Borderline || c2 == Check::Borderline || c3 == Check::Borderline;
    if (borderline) {
      v.kind = Verdict::Kind::Unknown;
      v.reason = "a strict inequality sits on its boundary";
      return v;
    }
    v.kind = Verdict::Kind::Holds;
    return v;
  }

  // case II (unswapped): q >= p1, q < p2
  const double r2 = *e.r2();
  const double qc = *e.q_conj();
  const double inner = au * r2 / e.q() + m2 * r2 / qc + m2;
  const Check c1 = strict(m1, 0.0, false);
  record(v.conditions, "beta1(1-p1')+Q", m1, ">", 0.0, c1);
  const Check c2 = strict(au, 0.0, true);
  record(v.conditions, "alpha+Q", au, "<", 0.0, c2);
  const Check c3 = strict(m2, 0.0, false);
  record(v.conditions, "beta2(1-p2')+Q", m2, ">", 0.0, c3);
  const Check c4 = strict(inner, 0.0, true);
  record(v.conditions, "inner power sum", inner, "<", 0.0, c4);
  const bool balanced = std::fabs(balance) < kBoundaryTol;
  record(v.conditions, "exponent balance", balance, "==", 0.0,
         balanced ? Check::Pass : Check::Fail);
  if (c1 == Check::Fail) { fail("mass integral of v1 diverges: beta1(1-p1')+Q <= 0"); return v; }
  if (c2 == Check::Fail) { fail("tail integral of u diverges: alpha+Q >= 0"); return v; }
  if (c3 == Check::Fail) { fail("mass integral of v2 diverges: beta2(1-p2')+Q <= 0"); return v; }
  if (c4 == Check::Fail) { fail("inner integral of the second condition diverges"); return v; }
  if (!balanced) { fail("exponent balance nonzero"); return v; }
  borderline = c1 == Check::Borderline || c2 == Check::Borderline || c3 == Check::Borderline ||
               c4 == Check::Borderline;
  if (borderline) {
    v.kind = Verdict::Kind::Unknown;
    v.reason = "a strict inequality sits on its boundary";
    return v;
  }
  v.kind = Verdict::Kind::Holds;
  return v;
}

Verdict classify_hyperbolic(const PowerDatum& datum) {
  const CaseId id = dispatch_case(datum.exps);
  if (id.kind != CaseId::Kind::I)
    return not_covered(id, "sinh-power classification covers case I only (case " +
                               to_string(id.kind) + ")");
  const ExponentSystem& e = datum.exps;
  const double n = datum.geometry.dim();
  const double m1 = datum.beta1 * (1.0 - e.p1_conj()) + n;
  const double m2 = datum.beta2 * (1.0 - e.p2_conj()) + n;
  const double an = datum.alpha + n;

  Verdict v;
  const Check cm1 = strict(m1, 0.0, false);
  record(v.conditions, "beta1(1-p1')+n", m1, ">", 0.0, cm1);
  const Check cm2 = strict(m2, 0.0, false);
  record(v.conditions, "beta2(1-p2')+n", m2, ">", 0.0, cm2);
  const Check cu = strict(an - 1.0, 0.0, true);
  record(v.conditions, "alpha+n-1", an - 1.0, "<", 0.0, cu);
  if (cm1 == Check::Fail) {
    v.kind = Verdict::Kind::Fails;
    v.reason = "mass integral of v1 diverges: beta1(1-p1')+n <= 0";
    return v;
  }
  if (cm2 == Check::Fail) {
    v.kind = Verdict::Kind::Fails;
    v.reason = "mass integral of v2 diverges: beta2(1-p2')+n <= 0";
    return v;
  }
  if (cu == Check::Fail) {
    v.kind = Verdict::Kind::Fails;
    v.reason = "tail integral of u diverges: alpha+n-1 >= 0";
    return v;
  }
  if (cm1 == Check::Borderline || cm2 == Check::Borderline || cu == Check::Borderline) {
    v.kind = Verdict::Kind::Unknown;
    v.reason = "a necessary condition sits on its boundary";
    return v;
  }

  const double sum = an / e.q() + m1 / e.p1_conj() + m2 / e.p2_conj();
  const double cap = 1.0 / e.q() + 1.0 / e.p1_conj() + 1.0 / e.p2_conj();
  // true large-radius exponent: mass kernels with m_i < 1 stop growing, so
  // their contribution saturates at zero rather than going negative
  const double growth = (an - 1.0) / e.q() + std::max(m1 - 1.0, 0.0) / e.p1_conj() +
                        std::max(m2 - 1.0, 0.0) / e.p2_conj();
  const Check cg = strict(growth, 0.0, true);
  record(v.conditions, "large-radius exponent", growth, "<", 0.0, cg);

  bool band_ok = false;
  bool band_borderline = false;
  if (an >= 0.0) {
    const Check ca = strict(an, 1.0, true);
    record(v.conditions, "alpha+n", an, "<", 1.0, ca);
    const Check cs = strict(sum, cap, true);
    record(v.conditions, "exponent sum", sum, "<=", cap,
           cs == Check::Fail ? Check::Fail : Check::Pass);
    band_ok = ca == Check::Pass && cs != Check::Fail;
    band_borderline = ca == Check::Borderline;
  } else {
    const Check clo = strict(sum, 0.0, false);
    record(v.conditions, "exponent sum lower", sum, ">=", 0.0,
           clo == Check::Fail ? Check::Fail : Check::Pass);
    const Check chi = strict(sum, cap, true);
    record(v.conditions, "exponent sum upper", sum, "<=", cap,
           chi == Check::Fail ? Check::Fail : Check::Pass);
    band_ok = clo != Check::Fail && chi != Check::Fail;
    band_borderline = false;
  }

  if (band_ok && !band_borderline && cg == Check::Pass) {
    v.kind = Verdict::Kind::HoldsSufficient;
    v.reason = an >= 0.0 ? "sufficient band (nonnegative alpha+n)"
                         : "sufficient band (negative alpha+n)";
    return v;
  }
  v.kind = Verdict::Kind::Unknown;
  v.reason = "outside the sufficient bands; no necessity is claimed there";
  return v;
}

Verdict classify_cartan_hadamard(const PowerDatum& datum) {
  if (datum.geometry.curvature_b() == 0.0) {
    PowerDatum flat{RadialGeometry::homogeneous(datum.geometry.dim(),
                                                datum.geometry.sphere_area()),
                    datum.alpha, datum.beta1, datum.beta2, datum.exps};
    Verdict v = classify_homogeneous(flat);
    v.reason += v.reason.empty() ? "flat case, Q = n" : "; flat case, Q = n";
    return v;
  }
  PowerDatum hyp{RadialGeometry::hyperbolic(datum.geometry.dim()), datum.alpha, datum.beta1,
                 datum.beta2, datum.exps};
  Verdict v = classify_hyperbolic(hyp);
  v.reason += v.reason.empty() ? "curvature scale moves constants only"
                               : "; curvature scale moves constants only";
  return v;
}

}  // namespace bihardy

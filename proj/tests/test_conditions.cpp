#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "bihardy/conditions.hpp"
#include "bihardy/mathutil.hpp"

using namespace bihardy;

namespace {

// line weights with pure power densities: u_line = t^{pu},
// v_dual_i = t^{di}, v_line_i = (v_dual_i)^{1-p_i}
LineWeights power_line(double pu, double d1, double d2, const ExponentSystem& exps) {
  LineWeights lw;
  lw.log_u = [pu](double t) { return pu * std::log(t); };
  lw.u_hints = EndpointHints::powers(pu, pu);
  const double du[2] = {d1, d2};
  for (int i = 0; i < 2; ++i) {
    const double d = du[i];
    const double line_exp = 1.0 - exps.p(i + 1);
    lw.log_v_dual[i] = [d](double t) { return d * std::log(t); };
    lw.log_v[i] = [d, line_exp](double t) { return line_exp * d * std::log(t); };
    lw.v_dual_hints[i] = EndpointHints::powers(d, d);
  }
  return lw;
}

constexpr double kB1CaseI = 0.7071067811865476;
constexpr double kChighCaseI = 23.323807579381202;

// flat Q=4, sigma=1, alpha=-7, beta1=2 (p1=2), beta2=10 (p2=4), q=2
constexpr double kB1CaseII = 0.5533409598501608;
constexpr double kB2CaseII = 0.35355339059327373;
constexpr double kClowCaseII = 0.5533409598501608;
constexpr double kChighCaseII = 9.045529832318292;

// flat Q=4, p1=p2=3, q=2, beta=6,6, alpha=-20/3
constexpr double kB1CaseIII = 0.6123724356957945;
constexpr double kB23CaseIII = 0.4860403243099164;
constexpr double kChighCaseIII = 53.39464342360821;

}  // namespace

TEST_CASE("case dispatch table") {
  struct Row {
    double p1, p2, q;
    CaseId::Kind kind;
    bool swapped;
  };
  const std::vector<Row> rows = {
      {2.0, 2.0, 2.0, CaseId::Kind::I, false},
      {1.5, 3.0, 3.0, CaseId::Kind::I, false},
      {2.0, 3.0, 3.001, CaseId::Kind::I, false},
      {2.0, 3.0, 2.5, CaseId::Kind::II, false},
      {3.0, 2.0, 2.5, CaseId::Kind::II, true},
      {2.0, 4.0, 2.0, CaseId::Kind::II, false},
      {3.0, 3.0, 2.0, CaseId::Kind::III, false},
      {4.0, 3.0, 2.0, CaseId::Kind::III, false},
      {2.5, 2.5, 2.0, CaseId::Kind::III, false},
      {4.0, 5.0, 1.5, CaseId::Kind::IV, false},
      {5.0, 5.0, 2.0, CaseId::Kind::IV, false},
      {10.0, 10.0, 3.0, CaseId::Kind::IV, false},
  };
  for (const Row& r : rows) {
    CAPTURE(r.p1);
    CAPTURE(r.p2);
    CAPTURE(r.q);
    const CaseId id = dispatch_case(ExponentSystem(r.p1, r.p2, r.q));
    CHECK(id.kind == r.kind);
    CHECK(id.swapped == r.swapped);
  }
  CHECK(dispatch_case(ExponentSystem(2.0, 2.0, 0.8)).kind == CaseId::Kind::NotCovered);
  CHECK(dispatch_case(ExponentSystem(2.0, 2.0, 1.0)).kind == CaseId::Kind::NotCovered);
  CHECK(dispatch_case(ExponentSystem(3.0, 4.0, 0.5)).kind == CaseId::Kind::NotCovered);
}

TEST_CASE("derived exponents") {
  const ExponentSystem e(2.0, 4.0, 2.0);
  CHECK(e.p1_conj() == doctest::Approx(2.0));
  CHECK(e.p2_conj() == doctest::Approx(4.0 / 3.0));
  CHECK(*e.q_conj() == doctest::Approx(2.0));
  CHECK(!e.r1().has_value());
  CHECK(*e.r2() == doctest::Approx(4.0));
  CHECK(!e.k().has_value());

  const ExponentSystem f(4.0, 5.0, 1.5);
  CHECK(*f.k() == doctest::Approx(1.0 / (1.0 / 1.5 - 0.25 - 0.2)));
  CHECK(*f.r1() == doctest::Approx(1.0 / (1.0 / 1.5 - 0.25)));
}

TEST_CASE("sup_over_t examples") {
  SUBCASE("constant") {
    const double v = sup_over_t([](double) { return 1.0 / std::sqrt(2.0); });
    CHECK(v == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  }
  SUBCASE("net positive slope runs to infinity") {
    const double v = sup_over_t([](double t) { return std::pow(t, 0.25); });
    CHECK(v == kInf);
  }
  SUBCASE("interior maximum refined by golden section") {
    const double v = sup_over_t([](double t) { return t * std::exp(-t); });
    CHECK(v == doctest::Approx(std::exp(-1.0)).epsilon(1e-6));
  }
  SUBCASE("an infinite node wins immediately") {
    const double v = sup_over_t([](double t) { return t > 1.0 && t < 3.0 ? kInf : 1.0; });
    CHECK(v == kInf);
  }
}

TEST_CASE("B1 closed-form cases") {
  const ExponentSystem exps(2.0, 2.0, 2.0);
  SUBCASE("balanced: constant supremum") {
    const LineWeights lw = power_line(-3.0, 0.0, 0.0, exps);
    const CumulativeKernels ker = kernels(lw);
    CHECK(eval_B1(ker, exps) == doctest::Approx(kB1CaseI).epsilon(1e-6));
  }
  SUBCASE("broken balance: growth toward zero") {
    const LineWeights lw = power_line(-5.0, 0.0, 0.0, exps);
    const CumulativeKernels ker = kernels(lw);
    CHECK(eval_B1(ker, exps) == kInf);
  }
  SUBCASE("full pipeline from radial weights") {
    const RadialGeometry geo = RadialGeometry::homogeneous(4.0, 1.0);
    const WeightTriple w{RadialWeight::power(-6.0), RadialWeight::power(3.0),
                         RadialWeight::power(3.0)};
    const LineWeights lw = build_line_weights(geo, w, exps);
    const CumulativeKernels ker = kernels(lw);
    CHECK(eval_B1(ker, exps) == doctest::Approx(kB1CaseI).epsilon(1e-6));
  }
}

TEST_CASE("B2 evaluations") {
  SUBCASE("divergent tail kernel forces +inf") {
    const ExponentSystem exps(2.0, 4.0, 2.0);
    const LineWeights lw = power_line(-1.0, 0.0, 0.0, exps);  // u tail log-divergent
    const CumulativeKernels ker = kernels(lw);
    CHECK(eval_B2(ker, lw, exps) == kInf);
  }
  SUBCASE("growth toward infinity") {
    // u_line = t^-3, duals = 1: the inner tail converges but the outer
    // supremum climbs like t^{1/4}
    const ExponentSystem exps(2.0, 4.0, 2.0);
    const LineWeights lw = power_line(-3.0, 0.0, 0.0, exps);
    const CumulativeKernels ker = kernels(lw);
    CHECK(eval_B2(ker, lw, exps) == kInf);
  }
  SUBCASE("balanced case II datum") {
    const ExponentSystem exps(2.0, 4.0, 2.0);
    const RadialGeometry geo = RadialGeometry::homogeneous(4.0, 1.0);
    const WeightTriple w{RadialWeight::power(-7.0), RadialWeight::power(2.0),
                         RadialWeight::power(10.0)};
    const LineWeights lw = build_line_weights(geo, w, exps);
    const CumulativeKernels ker = kernels(lw);
    CHECK(eval_B1(ker, exps) == doctest::Approx(kB1CaseII).epsilon(1e-6));
    CHECK(eval_B2(ker, lw, exps) == doctest::Approx(kB2CaseII).epsilon(1e-6));
  }
}

TEST_CASE("B3 mirrors B2 on symmetric data") {
  const ExponentSystem exps(3.0, 3.0, 2.0);
  const RadialGeometry geo = RadialGeometry::homogeneous(4.0, 1.0);
  const WeightTriple w{RadialWeight::power(-20.0 / 3.0), RadialWeight::power(6.0),
                       RadialWeight::power(6.0)};
  const LineWeights lw = build_line_weights(geo, w, exps);
  const CumulativeKernels ker = kernels(lw);
  const double b1 = eval_B1(ker, exps);
  const double b2 = eval_B2(ker, lw, exps);
  const double b3 = eval_B3(ker, lw, exps);
  CHECK(b1 == doctest::Approx(kB1CaseIII).epsilon(1e-6));
  CHECK(b2 == doctest::Approx(kB23CaseIII).epsilon(1e-6));
  CHECK(b3 == doctest::Approx(b2).epsilon(1e-8));
}

namespace {

// high-resolution trapezoid oracle for the case IV quantities on
// exponentially decaying hyperbolic data
struct RiemannOracle {
  std::vector<double> t, ut, d1, d2, u1, v11, v12;
  explicit RiemannOracle(const LineWeights& lw, int n = 100000, double lo = 1e-4,
                         double hi = 60.0) {
    t.resize(n);
    ut.resize(n);
    d1.resize(n);
    d2.resize(n);
    const double la = std::log(lo), lb = std::log(hi);
    for (int i = 0; i < n; ++i) {
      t[i] = std::exp(la + (lb - la) * i / (n - 1.0));
      ut[i] = std::exp(lw.log_u(t[i]));
      d1[i] = std::exp(lw.log_v_dual_of(1)(t[i]));
      d2[i] = std::exp(lw.log_v_dual_of(2)(t[i]));
    }
    u1.assign(n, 0.0);
    v11.assign(n, 0.0);
    v12.assign(n, 0.0);
    for (int i = n - 2; i >= 0; --i)
      u1[i] = u1[i + 1] + 0.5 * (ut[i] + ut[i + 1]) * (t[i + 1] - t[i]);
    for (int i = 1; i < n; ++i) {
      v11[i] = v11[i - 1] + 0.5 * (d1[i] + d1[i - 1]) * (t[i] - t[i - 1]);
      v12[i] = v12[i - 1] + 0.5 * (d2[i] + d2[i - 1]) * (t[i] - t[i - 1]);
    }
  }
  double b4(const ExponentSystem& e) const {
    const double k = *e.k();
    double acc = 0.0;
    for (std::size_t i = 1; i + 1 < t.size(); ++i) {
      const double g = std::pow(u1[i], k / e.p1() + k / e.p2()) *
                       std::pow(v11[i], k / e.p1_conj()) * std::pow(v12[i], k / e.p2_conj()) *
                       ut[i];
      acc += g * 0.5 * (t[i + 1] - t[i - 1]);
    }
    return std::pow(acc, 1.0 / k);
  }
  double b5(const ExponentSystem& e) const {
    const double k = *e.k();
    const double r2 = *e.r2();
    const double qc = *e.q_conj();
    const std::size_t n = t.size();
    std::vector<double> inner(n, 0.0);
    auto w = [&](std::size_t j) {
      return std::pow(u1[j], r2 / e.q()) * std::pow(v12[j], r2 / qc) * d2[j];
    };
    for (std::size_t i = n - 1; i-- > 0;)
      inner[i] = inner[i + 1] + 0.5 * (w(i) + w(i + 1)) * (t[i + 1] - t[i]);
    const double r2c = r2 / (r2 - 1.0);
    double acc = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      acc += std::pow(inner[i], k / r2) * std::pow(v11[i], k / r2c) * d1[i] * 0.5 *
             (t[i + 1] - t[i - 1]);
    }
    return std::pow(acc, 1.0 / k);
  }
};

LineWeights case4_datum(double beta1, double beta2, const ExponentSystem& exps) {
  const RadialGeometry geo = RadialGeometry::hyperbolic(2.0);
  const WeightTriple w{RadialWeight::sinh_power(-3.0), RadialWeight::sinh_power(beta1),
                       RadialWeight::sinh_power(beta2)};
  return build_line_weights(geo, w, exps);
}

}  // namespace

TEST_CASE("case IV quantities on hyperbolic data") {
  const ExponentSystem exps(5.0, 5.0, 1.25);
  SUBCASE("finite values cross-checked by a high-resolution sum") {
    const LineWeights lw = case4_datum(2.0, 2.0, exps);
    const CumulativeKernels ker = kernels(lw);
    const double b4 = eval_B4(ker, lw, exps);
    const double b5 = eval_B5(ker, lw, exps);
    const double b6 = eval_B6(ker, lw, exps, true);
    const double b6_alt = eval_B6(ker, lw, exps, false);
    CHECK(std::isfinite(b4));
    CHECK(std::isfinite(b5));
    // symmetric datum: both readings coincide and B5 = B6
    CHECK(b6 == doctest::Approx(b6_alt).epsilon(1e-9));
    CHECK(b5 == doctest::Approx(b6).epsilon(1e-4));

    const RiemannOracle oracle(lw);
    CHECK(b4 == doctest::Approx(oracle.b4(exps)).epsilon(2e-3));
    CHECK(b5 == doctest::Approx(oracle.b5(exps)).epsilon(2e-3));
  }
  SUBCASE("divergent v kernel forces +inf") {
    // beta1 = 10 gives beta1(1-p1') + n = -0.5 <= 0: v1 mass diverges
    const LineWeights lw = case4_datum(10.0, 2.0, exps);
    const CumulativeKernels ker = kernels(lw);
    CHECK(ker.v1_divergent(1));
    CHECK(eval_B4(ker, lw, exps) == kInf);
    CHECK(eval_B5(ker, lw, exps) == kInf);
    CHECK(eval_B6(ker, lw, exps) == kInf);
  }
  SUBCASE("asymmetric datum: alternate B6 reading equals transposed B5") {
    const LineWeights lw = case4_datum(1.0, 3.0, exps);
    const CumulativeKernels ker = kernels(lw);
    const LineWeights lw_t = case4_datum(3.0, 1.0, exps.transposed());
    const CumulativeKernels ker_t = kernels(lw_t);
    const double b6_alt = eval_B6(ker, lw, exps, false);
    const double b5_t = eval_B5(ker_t, lw_t, exps.transposed());
    CHECK(b6_alt == doctest::Approx(b5_t).epsilon(1e-4));
  }
}

TEST_CASE("bracket constants") {
  SUBCASE("case I") {
    std::map<std::string, double> b{{"B1", kB1CaseI}};
    const auto br = bracket_constant(CaseId{CaseId::Kind::I}, b, ExponentSystem(2, 2, 2));
    REQUIRE(br);
    CHECK(br->first == doctest::Approx(kB1CaseI).epsilon(1e-12));
    CHECK(br->second == doctest::Approx(kChighCaseI).epsilon(1e-12));
    // the ratio of the bracket ends is pinned by the case I display
    CHECK(br->second / br->first ==
          doctest::Approx(8.0 * std::sqrt(1.0 + 16.0)).epsilon(1e-12));
  }
  SUBCASE("case II") {
    std::map<std::string, double> b{{"B1", kB1CaseII}, {"B2", kB2CaseII}};
    const auto br = bracket_constant(CaseId{CaseId::Kind::II}, b, ExponentSystem(2, 4, 2));
    REQUIRE(br);
    CHECK(br->first == doctest::Approx(kClowCaseII).epsilon(1e-10));
    CHECK(br->second == doctest::Approx(kChighCaseII).epsilon(1e-10));
  }
  SUBCASE("case III") {
    std::map<std::string, double> b{
        {"B1", kB1CaseIII}, {"B2", kB23CaseIII}, {"B3", kB23CaseIII}};
    const auto br = bracket_constant(CaseId{CaseId::Kind::III}, b, ExponentSystem(3, 3, 2));
    REQUIRE(br);
    CHECK(br->first == doctest::Approx(kB1CaseIII).epsilon(1e-10));
    CHECK(br->second == doctest::Approx(kChighCaseIII).epsilon(1e-10));
  }
  SUBCASE("case IV has no bracket") {
    std::map<std::string, double> b{{"B4", 1.0}, {"B5", 1.0}, {"B6", 1.0}};
    CHECK(!bracket_constant(CaseId{CaseId::Kind::IV}, b, ExponentSystem(5, 5, 1.25)));
  }
  SUBCASE("infinite inputs give no bracket") {
    std::map<std::string, double> b{{"B1", kInf}};
    CHECK(!bracket_constant(CaseId{CaseId::Kind::I}, b, ExponentSystem(2, 2, 2)));
  }
}

TEST_CASE("eval_report end to end") {
  const RadialGeometry geo = RadialGeometry::homogeneous(4.0, 1.0);
  SUBCASE("balanced case I holds with the expected bracket") {
    const WeightTriple w{RadialWeight::power(-6.0), RadialWeight::power(3.0),
                         RadialWeight::power(3.0)};
    const ConditionReport r = eval_report(geo, w, ExponentSystem(2, 2, 2));
    CHECK(r.case_id.kind == CaseId::Kind::I);
    CHECK(r.holds);
    CHECK(r.b.at("B1") == doctest::Approx(kB1CaseI).epsilon(1e-6));
    REQUIRE(r.bracket);
    CHECK(r.bracket->first == doctest::Approx(kB1CaseI).epsilon(1e-6));
    CHECK(r.bracket->second == doctest::Approx(kChighCaseI).epsilon(1e-6));
  }
  SUBCASE("broken balance fails") {
    const WeightTriple w{RadialWeight::power(-5.0), RadialWeight::power(3.0),
                         RadialWeight::power(3.0)};
    const ConditionReport r = eval_report(geo, w, ExponentSystem(2, 2, 2));
    CHECK(r.b.at("B1") == kInf);
    CHECK(!r.holds);
    CHECK(!r.bracket);
  }
  SUBCASE("q below 1 is not covered") {
    const WeightTriple w{RadialWeight::power(-6.0), RadialWeight::power(3.0),
                         RadialWeight::power(3.0)};
    const ConditionReport r = eval_report(geo, w, ExponentSystem(2, 2, 0.8));
    CHECK(r.case_id.kind == CaseId::Kind::NotCovered);
    CHECK(!r.holds);
  }
  SUBCASE("undetermined classification is reported, not guessed") {
    const WeightTriple w{
        RadialWeight::custom([](double r) { return std::pow(r, -3.5) / (1.0 + r / 1e4); }),
        RadialWeight::power(3.0), RadialWeight::power(3.0)};
    const ConditionReport r = eval_report(geo, w, ExponentSystem(2, 2, 2));
    CHECK(r.undetermined);
    CHECK(!r.holds);
  }
}

TEST_CASE("case swap symmetry") {
  const RadialGeometry geo = RadialGeometry::homogeneous(4.0, 1.0);
  // swapped: p2 <= q < p1
  const WeightTriple w{RadialWeight::power(-7.0), RadialWeight::power(10.0),
                       RadialWeight::power(2.0)};
  const ConditionReport swapped = eval_report(geo, w, ExponentSystem(4.0, 2.0, 2.0));
  const WeightTriple wt{w.u, w.v2, w.v1};
  const ConditionReport plain = eval_report(geo, wt, ExponentSystem(2.0, 4.0, 2.0));
  CHECK(swapped.case_id.kind == CaseId::Kind::II);
  CHECK(swapped.case_id.swapped);
  CHECK(!plain.case_id.swapped);
  CHECK(swapped.holds == plain.holds);
  REQUIRE(swapped.b.count("B1"));
  CHECK(swapped.b.at("B1") == doctest::Approx(plain.b.at("B1")).epsilon(1e-12));
  CHECK(swapped.b.at("B2") == doctest::Approx(plain.b.at("B2")).epsilon(1e-12));
  REQUIRE(swapped.bracket);
  REQUIRE(plain.bracket);
  CHECK(swapped.bracket->first == doctest::Approx(plain.bracket->first).epsilon(1e-12));
  CHECK(swapped.bracket->second == doctest::Approx(plain.bracket->second).epsilon(1e-12));
}

TEST_CASE("scale covariance of B1") {
  const ExponentSystem exps(2.0, 3.0, 3.0);
  const RadialGeometry geo = RadialGeometry::homogeneous(3.0, 1.0);
  // balanced datum built from the closed-form balance
  const double m1 = 1.0, m2 = 1.5;
  const double beta1 = (m1 - 3.0) / (1.0 - exps.p1_conj());
  const double beta2 = (m2 - 3.0) / (1.0 - exps.p2_conj());
  const double alpha =
      -3.0 - exps.q() * (m1 / exps.p1_conj() + m2 / exps.p2_conj());
  const WeightTriple base{RadialWeight::power(alpha), RadialWeight::power(beta1),
                          RadialWeight::power(beta2)};
  const LineWeights lw0 = build_line_weights(geo, base, exps);
  const double b1_0 = eval_B1(kernels(lw0), exps);
  REQUIRE(std::isfinite(b1_0));

  for (double c : {0.5, 3.0}) {
    // scaled u
    const WeightTriple wu{
        RadialWeight::custom([alpha, c](double r) { return c * std::pow(r, alpha); },
                             std::make_pair(alpha, alpha)),
        base.v1, base.v2};
    const double b1_u = eval_B1(kernels(build_line_weights(geo, wu, exps)), exps);
    CHECK(b1_u == doctest::Approx(b1_0 * std::pow(c, 1.0 / exps.q())).epsilon(1e-6));
    // scaled v1
    const WeightTriple wv{base.u,
                          RadialWeight::custom(
                              [beta1, c](double r) { return c * std::pow(r, beta1); },
                              std::make_pair(beta1, beta1)),
                          base.v2};
    const double b1_v = eval_B1(kernels(build_line_weights(geo, wv, exps)), exps);
    CHECK(b1_v == doctest::Approx(b1_0 * std::pow(c, -1.0 / exps.p1())).epsilon(1e-6));
  }
}

TEST_CASE("space-side closed forms agree with the pipeline") {
  // D = B identity for random power tuples, case I and case II
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  int finite_checked = 0, infinite_checked = 0;
  for (int it = 0; it < 25; ++it) {
    const double Q = 2.0 + 3.0 * U(rng);
    const double sigma = 0.5 + 2.5 * U(rng);
    const bool case2 = it % 2 == 1;
    double p1 = 1.3 + 1.5 * U(rng);
    double p2 = case2 ? 0.0 : 1.3 + 1.5 * U(rng);
    double q;
    if (case2) {
      q = p1 + 0.2 + U(rng);
      p2 = q + 0.3 + U(rng);
    } else {
      q = std::max(p1, 1.3 + 1.5 * U(rng));
      p2 = std::min(p1, q);
      p1 = std::max(p1, p2);
      std::swap(p1, p2);  // ensure p1 <= p2 <= q
    }
    const ExponentSystem exps(p1, p2, q);
    const double m1 = 0.5 + 2.0 * U(rng);
    const double m2 = 0.5 + 2.0 * U(rng);
    const double beta1 = (m1 - Q) / (1.0 - exps.p1_conj());
    const double beta2 = (m2 - Q) / (1.0 - exps.p2_conj());
    const bool broken = it % 5 == 4;
    double alpha = -Q - q * (m1 / exps.p1_conj() + m2 / exps.p2_conj());
    if (broken) alpha += 0.3 + U(rng);

    const RadialGeometry geo = RadialGeometry::homogeneous(Q, sigma);
    const WeightTriple w{RadialWeight::power(alpha), RadialWeight::power(beta1),
                         RadialWeight::power(beta2)};
    const ConditionReport r = eval_report(geo, w, exps);
    CAPTURE(Q);
    CAPTURE(p1);
    CAPTURE(p2);
    CAPTURE(q);
    CAPTURE(alpha);
    CAPTURE(broken);

    const double au = alpha + Q;
    if (broken || au >= 0.0) {
      CHECK(r.b.at("B1") == kInf);
      ++infinite_checked;
      continue;
    }
    // space-side closed form of the first condition
    const double d1 = std::pow(sigma, 1.0 / q + 1.0 / exps.p1_conj() + 1.0 / exps.p2_conj()) *
                      std::pow(std::fabs(au), -1.0 / q) *
                      std::pow(m1, -1.0 / exps.p1_conj()) *
                      std::pow(m2, -1.0 / exps.p2_conj());
    CHECK(r.b.at("B1") == doctest::Approx(d1).epsilon(1e-8));
    ++finite_checked;
    if (case2) {
      // space-side closed form of the second condition
      const double r2 = *exps.r2();
      const double qc = *exps.q_conj();
      const double E = au * r2 / q + m2 * r2 / qc + m2;
      REQUIRE(E < 0.0);
      const double d2 =
          std::pow(sigma, 1.0 / exps.p1_conj() + 1.0 / q + 1.0 / qc + 1.0 / r2) *
          std::pow(m1, -1.0 / exps.p1_conj()) * std::pow(std::fabs(au), -1.0 / q) *
          std::pow(m2, -1.0 / qc) * std::pow(std::fabs(E), -1.0 / r2);
      CHECK(r.b.at("B2") == doctest::Approx(d2).epsilon(1e-8));
    }
  }
  CHECK(finite_checked >= 10);
  CHECK(infinite_checked >= 4);
}

TEST_CASE("bracket ordering whenever present") {
  const RadialGeometry geo = RadialGeometry::homogeneous(4.0, 1.0);
  const WeightTriple w{RadialWeight::power(-6.0), RadialWeight::power(3.0),
                       RadialWeight::power(3.0)};
  for (double q : {2.0, 2.5, 3.0}) {
    const ConditionReport r = eval_report(geo, w, ExponentSystem(2.0, 2.0, q));
    if (r.bracket) {
      CHECK(r.bracket->first <= r.bracket->second);
      if (r.case_id.kind == CaseId::Kind::I) {
        CHECK(r.bracket->second / r.bracket->first ==
              doctest::Approx(8.0 * std::pow(1.0 + std::pow(4.0, q), 1.0 / q)).epsilon(1e-9));
      }
    }
  }
}

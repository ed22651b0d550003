#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bihardy/weights.hpp"

using namespace bihardy;

namespace {
const double kPi = std::numbers::pi;

LineWeights balanced_case1_weights() {
  // flat Q=4, sigma=1, u = r^-6, v_i = r^3, p = q = 2:
  // u_line = t^-3, v_line_i = 1, dual_i = 1
  const RadialGeometry geo = RadialGeometry::homogeneous(4.0, 1.0);
  const WeightTriple w{RadialWeight::power(-6.0), RadialWeight::power(3.0),
                       RadialWeight::power(3.0)};
  return build_line_weights(geo, w, ExponentSystem(2.0, 2.0, 2.0));
}
}  // namespace

TEST_CASE("reduced line weights on the flat backend") {
  const LineWeights lw = balanced_case1_weights();
  for (double tau : {0.5, 1.0, 2.0}) {
    CHECK(lw.u_line(tau) == doctest::Approx(std::pow(tau, -3.0)).epsilon(1e-13));
    CHECK(lw.v_line(1, tau) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(lw.v_dual(1, tau) == doctest::Approx(1.0).epsilon(1e-13));
  }
  REQUIRE(lw.u_hints.at_inf);
  CHECK(lw.u_hints.at_inf->pow == doctest::Approx(-3.0));
  CHECK(lw.u_hints.at_inf->rate == doctest::Approx(0.0));
}

TEST_CASE("reduced line weight on the hyperbolic backend") {
  const RadialGeometry geo = RadialGeometry::hyperbolic(2.0);
  const double alpha = 1.3;
  const WeightTriple w{RadialWeight::sinh_power(alpha), RadialWeight::power(0.0),
                       RadialWeight::power(0.0)};
  const LineWeights lw = build_line_weights(geo, w, ExponentSystem(2.0, 2.0, 2.0));
  for (double tau : {0.3, 0.7, 3.0}) {
    CHECK(lw.u_line(tau) ==
          doctest::Approx(2.0 * kPi * std::pow(std::sinh(tau), alpha + 1.0)).epsilon(1e-12));
  }
  REQUIRE(lw.u_hints.at_inf);
  CHECK(lw.u_hints.at_inf->rate == doctest::Approx(alpha + 1.0));
  REQUIRE(lw.u_hints.at_zero);
  CHECK(lw.u_hints.at_zero->pow == doctest::Approx(alpha + 1.0));
}

TEST_CASE("conjugate round trip is exact") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-3.0, 3.0);
  std::uniform_real_distribution<double> P(1.2, 5.0);
  for (int it = 0; it < 30; ++it) {
    const RadialGeometry geo = it % 2 == 0
                                   ? RadialGeometry::homogeneous(2.0 + std::fabs(U(rng)), 2.0)
                                   : RadialGeometry::hyperbolic(3.0);
    const WeightTriple w{RadialWeight::power(U(rng)),
                         it % 3 == 0 ? RadialWeight::sinh_power(U(rng), 1.0)
                                     : RadialWeight::power(U(rng)),
                         RadialWeight::power(U(rng))};
    const ExponentSystem exps(P(rng), P(rng), P(rng));
    const LineWeights lw = build_line_weights(geo, w, exps);
    for (int i = 1; i <= 2; ++i) {
      const double pc = exps.p_conj(i);
      for (int k = 0; k <= 12; ++k) {
        const double tau = std::pow(10.0, -3.0 + 6.0 * k / 12.0);
        // compare in log space: magnitudes span hundreds of decades
        const double via_v = (1.0 - pc) * lw.log_v_of(i)(tau);
        const double direct =
            (1.0 - pc) * w.v(i).log_value(tau) + geo.log_surface_density(tau);
        CHECK(std::fabs(via_v - direct) <= 1e-12 * std::max(1.0, std::fabs(direct)));
      }
    }
  }
}

TEST_CASE("cumulative kernels against closed forms") {
  const LineWeights lw = balanced_case1_weights();
  const CumulativeKernels ker = kernels(lw);
  CHECK(!ker.u1_divergent());
  CHECK(ker.u1(2.0) == doctest::Approx(0.125).epsilon(1e-8));
  CHECK(ker.v1(1, 0.3) == doctest::Approx(0.3).epsilon(1e-10));
  CHECK(ker.v1(2, 0.3) == doctest::Approx(0.3).epsilon(1e-10));
}

TEST_CASE("log-divergent tail makes the kernel identically infinite") {
  // u = r^-4 on flat Q=4: u_line = t^-1
  const RadialGeometry geo = RadialGeometry::homogeneous(4.0, 1.0);
  const WeightTriple w{RadialWeight::power(-4.0), RadialWeight::power(3.0),
                       RadialWeight::power(3.0)};
  const LineWeights lw = build_line_weights(geo, w, ExponentSystem(2.0, 2.0, 2.0));
  const CumulativeKernels ker = kernels(lw);
  CHECK(ker.u1_divergent());
  CHECK(ker.u1(1.0) == kInf);
  CHECK(ker.u1(17.0) == kInf);
  CHECK(!ker.v1_divergent(1));
}

TEST_CASE("kernel monotonicity") {
  const RadialGeometry geo = RadialGeometry::hyperbolic(3.0);
  const WeightTriple w{RadialWeight::sinh_power(-3.0), RadialWeight::sinh_power(1.0),
                       RadialWeight::sinh_power(0.5)};
  const LineWeights lw = build_line_weights(geo, w, ExponentSystem(2.0, 3.0, 2.0));
  const CumulativeKernels ker = kernels(lw);
  double prev_u = kInf, prev_v1 = 0.0, prev_v2 = 0.0;
  for (int k = 0; k <= 60; ++k) {
    const double t = std::pow(10.0, -5.0 + 10.0 * k / 60.0);
    const double u = ker.log_u1(t);
    const double v1 = ker.log_v1(1, t);
    const double v2 = ker.log_v1(2, t);
    if (k > 0) {
      CHECK(u <= prev_u + 1e-9);
      CHECK(v1 >= prev_v1 - 1e-9);
      CHECK(v2 >= prev_v2 - 1e-9);
    }
    prev_u = u;
    prev_v1 = v1;
    prev_v2 = v2;
  }
}

TEST_CASE("space and line kernels coincide for powers on the flat backend") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> A(0.2, 4.0);
  std::uniform_real_distribution<double> S(0.5, 4.0);
  for (int it = 0; it < 10; ++it) {
    const double Q = 2.0 + S(rng);
    const double sigma = S(rng);
    const double alpha = -Q - A(rng);  // keeps alpha + Q < 0
    const RadialGeometry geo = RadialGeometry::homogeneous(Q, sigma);
    const WeightTriple w{RadialWeight::power(alpha), RadialWeight::power(1.0),
                         RadialWeight::power(1.0)};
    const LineWeights lw = build_line_weights(geo, w, ExponentSystem(2.0, 2.0, 2.0));
    const CumulativeKernels ker = kernels(lw);
    for (double t : {0.01, 0.5, 3.0, 200.0}) {
      const double direct = sigma * std::pow(t, alpha + Q) / std::fabs(alpha + Q);
      CHECK(ker.u1(t) == doctest::Approx(direct).epsilon(1e-8));
    }
  }
}

TEST_CASE("precondition failures") {
  CHECK_THROWS_AS(ExponentSystem(1.0, 2.0, 2.0), std::domain_error);
  CHECK_THROWS_AS(ExponentSystem(2.0, 0.5, 2.0), std::domain_error);
  CHECK_THROWS_AS(ExponentSystem(2.0, 2.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(RadialWeight::sinh_power(1.0, 0.0), std::domain_error);

  const RadialGeometry geo = RadialGeometry::homogeneous(4.0, 1.0);
  const WeightTriple bad{RadialWeight::custom([](double r) { return r - 1.0; }),
                         RadialWeight::power(3.0), RadialWeight::power(3.0)};
  CHECK_THROWS_AS(build_line_weights(geo, bad, ExponentSystem(2.0, 2.0, 2.0)),
                  std::domain_error);
}

TEST_CASE("custom weight without declared exponents can fail classification") {
  // local exponent drifting across the critical value: kernel construction
  // must refuse rather than guess
  const RadialGeometry geo = RadialGeometry::homogeneous(1.0, 1.0);  // Lambda = 1
  auto drifting = [](double r) { return std::pow(r, -0.5) / (1.0 + r / 1e4); };
  const WeightTriple w{RadialWeight::custom(drifting), RadialWeight::power(0.5),
                       RadialWeight::power(0.5)};
  const LineWeights lw = build_line_weights(geo, w, ExponentSystem(2.0, 2.0, 2.0));
  CHECK_THROWS_AS(kernels(lw), UndeterminedError);
}

TEST_CASE("custom weight with declared exponents classifies exactly") {
  const RadialGeometry geo = RadialGeometry::homogeneous(3.0, 2.0);
  const WeightTriple w{
      RadialWeight::custom([](double r) { return 1.0 / ((1.0 + r * r) * (1.0 + r * r)); },
                           std::make_pair(0.0, -4.0)),
      RadialWeight::power(1.0), RadialWeight::power(1.0)};
  const LineWeights lw = build_line_weights(geo, w, ExponentSystem(2.0, 2.0, 2.0));
  REQUIRE(lw.u_hints.at_inf);
  CHECK(lw.u_hints.at_inf->pow == doctest::Approx(-2.0));  // -4 + (Q-1)
  const CumulativeKernels ker = kernels(lw);
  CHECK(!ker.u1_divergent());
  // direct numeric tail for comparison
  const QuadResult direct = integrate(
      [&](double s) { return std::exp(lw.log_u(s)); }, 3.0, kInf, {}, lw.u_hints);
  // interpolation granularity: exact only for pure power densities
  CHECK(ker.u1(3.0) == doctest::Approx(direct.value).epsilon(1e-5));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bihardy/geometry.hpp"
#include "bihardy/mathutil.hpp"

using namespace bihardy;

TEST_CASE("surface density closed forms") {
  const RadialGeometry hom = RadialGeometry::homogeneous(4.0, 1.0);
  CHECK(hom.surface_density(2.0) == doctest::Approx(8.0).epsilon(1e-14));

  // zero-curvature backend coincides with the flat one of the same dimension
  const RadialGeometry ch0 = RadialGeometry::cartan_hadamard(3.0, 0.0);
  const RadialGeometry flat3 = RadialGeometry::homogeneous(3.0, unit_sphere_area(3.0));
  CHECK(ch0.surface_density(1.7) == doctest::Approx(flat3.surface_density(1.7)).epsilon(1e-14));
  CHECK(unit_sphere_area(3.0) == doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-14));

  const RadialGeometry hyp2 = RadialGeometry::hyperbolic(2.0);
  const double r = 1e-6;
  CHECK(hyp2.surface_density(r) ==
        doctest::Approx(2.0 * std::numbers::pi * std::sinh(r)).epsilon(1e-14));
}

TEST_CASE("domain errors") {
  const RadialGeometry hom = RadialGeometry::homogeneous(4.0);
  CHECK_THROWS_AS(hom.surface_density(0.0), std::domain_error);
  CHECK_THROWS_AS(hom.surface_density(-1.0), std::domain_error);
  CHECK_THROWS_AS(RadialGeometry::homogeneous(-2.0), std::domain_error);
  CHECK_THROWS_AS(RadialGeometry::cartan_hadamard(3.0, -0.5), std::domain_error);
}

TEST_CASE("tail profiles") {
  const TailProfile hom = RadialGeometry::homogeneous(4.0).tail_profile();
  CHECK(hom.exponent_at_zero == doctest::Approx(3.0));
  CHECK(!hom.exponential);
  CHECK(hom.growth == doctest::Approx(3.0));

  const TailProfile hyp = RadialGeometry::hyperbolic(3.0).tail_profile();
  CHECK(hyp.exponent_at_zero == doctest::Approx(2.0));
  CHECK(hyp.exponential);
  CHECK(hyp.growth == doctest::Approx(2.0));

  const TailProfile ch = RadialGeometry::cartan_hadamard(2.0, 4.0).tail_profile();
  CHECK(ch.exponent_at_zero == doctest::Approx(1.0));
  CHECK(ch.exponential);
  CHECK(ch.growth == doctest::Approx(2.0));  // (n-1) sqrt(b)
}

TEST_CASE("positivity and continuity on a wide log grid") {
  // the log evaluator certifies positivity and finiteness even where the
  // linear value overflows the double range (exponential growth at r ~ 1e4)
  const RadialGeometry geos[] = {RadialGeometry::homogeneous(2.5, 3.0),
                                 RadialGeometry::hyperbolic(3.0),
                                 RadialGeometry::cartan_hadamard(2.0, 0.7)};
  for (const auto& geo : geos) {
    for (int k = 0; k <= 80; ++k) {
      const double r = std::pow(10.0, -4.0 + 8.0 * k / 80.0);
      const double lv = geo.log_surface_density(r);
      CHECK(std::isfinite(lv));
      if (r < 500.0) CHECK(geo.surface_density(r) > 0.0);
      const double step = geo.log_surface_density(r * (1.0 + 1e-9));
      CHECK(step == doctest::Approx(lv).epsilon(1e-6));
    }
  }
}

TEST_CASE("small curvature converges to the flat backend") {
  const double b = 1e-8;
  for (double n : {2.0, 3.0}) {
    const RadialGeometry ch = RadialGeometry::cartan_hadamard(n, b);
    const RadialGeometry flat = RadialGeometry::homogeneous(n, unit_sphere_area(n));
    for (int k = 0; k <= 40; ++k) {
      const double r = std::pow(10.0, -2.0 + 4.0 * k / 40.0);
      const double rel =
          std::fabs(ch.surface_density(r) / flat.surface_density(r) - 1.0);
      // J - 1 ~ (n-1) b r^2 / 6; at r = 100 this is a few 1e-5
      CHECK(rel <= (n - 1.0) * b * r * r / 6.0 * 1.5 + 1e-12);
      if (r <= 10.0) CHECK(rel < 1e-6);
    }
  }
}

TEST_CASE("tail profile matches a log-log slope fit of the density") {
  const RadialGeometry geos[] = {RadialGeometry::homogeneous(4.0, 2.0),
                                 RadialGeometry::hyperbolic(3.0),
                                 RadialGeometry::cartan_hadamard(2.5, 1.3)};
  for (const auto& geo : geos) {
    const TailProfile p = geo.tail_profile();
    // slope near zero
    const double t0 = 1e-5, t1 = 1e-4;
    const double slope0 = (geo.log_surface_density(t1) - geo.log_surface_density(t0)) /
                          (std::log(t1) - std::log(t0));
    CHECK(std::fabs(slope0 - p.exponent_at_zero) < 0.05);
    // growth at infinity: power-law slope in log t, or rate in t
    const double T0 = 1e3, T1 = 2e3;
    if (p.exponential) {
      const double rate =
          (geo.log_surface_density(T1) - geo.log_surface_density(T0)) / (T1 - T0);
      CHECK(std::fabs(rate - p.growth) < 0.05);
    } else {
      const double slope = (geo.log_surface_density(T1) - geo.log_surface_density(T0)) /
                           (std::log(T1) - std::log(T0));
      CHECK(std::fabs(slope - p.growth) < 0.05);
    }
  }
}

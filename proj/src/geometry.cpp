#include "bihardy/geometry.hpp"

#include <cmath>
#include <stdexcept>

#include "bihardy/mathutil.hpp"

namespace bihardy {

RadialGeometry RadialGeometry::homogeneous(double hom_dim, double sphere_area) {
  if (!(hom_dim > 0.0)) throw std::domain_error("homogeneous dimension must be positive");
  if (!(sphere_area > 0.0)) throw std::domain_error("sphere area must be positive");
  return {GeometryKind::Homogeneous, hom_dim, 0.0, sphere_area};
}

RadialGeometry RadialGeometry::hyperbolic(double dim) {
  if (!(dim > 0.0)) throw std::domain_error("dimension must be positive");
  return {GeometryKind::Hyperbolic, dim, 1.0, unit_sphere_area(dim)};
}

RadialGeometry RadialGeometry::cartan_hadamard(double dim, double curvature_b) {
  if (!(dim > 0.0)) throw std::domain_error("dimension must be positive");
  if (!(curvature_b >= 0.0)) throw std::domain_error("curvature parameter must be >= 0");
  return {GeometryKind::CartanHadamardConst, dim, curvature_b, unit_sphere_area(dim)};
}

double RadialGeometry::surface_density(double r) const {
  if (!(r > 0.0)) throw std::domain_error("surface_density: r must be positive");
  return std::exp(log_surface_density(r));
}

double RadialGeometry::log_surface_density(double r) const {
  if (!(r > 0.0)) throw std::domain_error("surface_density: r must be positive");
  const double lsig = std::log(sigma_);
  switch (kind_) {
    case GeometryKind::Homogeneous:
      return lsig + (dim_ - 1.0) * std::log(r);
    case GeometryKind::Hyperbolic:
      return lsig + (dim_ - 1.0) * log_sinh(r);
    case GeometryKind::CartanHadamardConst: {
      if (b_ == 0.0) return lsig + (dim_ - 1.0) * std::log(r);
      const double x = std::sqrt(b_) * r;
      double log_j_factor;  // log(sinh(x)/x), via series when x is tiny
      if (x < 1e-4) {
        log_j_factor = std::log1p(x * x / 6.0 * (1.0 + x * x / 20.0));
      } else {
        log_j_factor = log_sinh(x) - std::log(x);
      }
      return lsig + (dim_ - 1.0) * (log_j_factor + std::log(r));
    }
  }
  return -kInf;
}

TailProfile RadialGeometry::tail_profile() const {
  TailProfile p;
  p.exponent_at_zero = dim_ - 1.0;
  switch (kind_) {
    case GeometryKind::Homogeneous:
      p.exponential = false;
      p.growth = dim_ - 1.0;
      break;
    case GeometryKind::Hyperbolic:
      p.exponential = true;
      p.growth = dim_ - 1.0;
      break;
    case GeometryKind::CartanHadamardConst:
      if (b_ == 0.0) {
        p.exponential = false;
        p.growth = dim_ - 1.0;
      } else {
        p.exponential = true;
        p.growth = (dim_ - 1.0) * std::sqrt(b_);
      }
      break;
  }
  return p;
}

EdgeBehavior RadialGeometry::behavior_at_zero() const {
  return EdgeBehavior{0.0, dim_ - 1.0, 0.0};
}

EdgeBehavior RadialGeometry::behavior_at_inf() const {
  const TailProfile p = tail_profile();
  if (p.exponential) return EdgeBehavior{p.growth, 0.0, 0.0};
  return EdgeBehavior{0.0, p.growth, 0.0};
}

double surface_density(const RadialGeometry& geo, double r) { return geo.surface_density(r); }
TailProfile tail_profile(const RadialGeometry& geo) { return geo.tail_profile(); }

}  // namespace bihardy

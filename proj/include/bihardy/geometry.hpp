#ifndef BIHARDY_GEOMETRY_HPP
#define BIHARDY_GEOMETRY_HPP

#include "bihardy/asymptotics.hpp"

namespace bihardy {

enum class GeometryKind { Homogeneous, Hyperbolic, CartanHadamardConst };

/// Growth class of the radial surface density at infinity.
struct TailProfile {
  double exponent_at_zero = 0.0;
  bool exponential = false;
  double growth = 0.0;  // power-law exponent, or exponential rate
};

/// A radial measure backend: the density Lambda(r) of the measure of the
/// sphere of radius r around the base point, so that integrals of radial
/// functions reduce to integral of g(r) * Lambda(r) dr over (0, inf).
///
/// Three backends are provided:
///   Homogeneous          Lambda(r) = sigma * r^{Q-1}
///   Hyperbolic           Lambda(r) = omega_{n-1} * sinh(r)^{n-1}
///   CartanHadamardConst  Lambda(r) = omega_{n-1} * J(r) * r^{n-1},
///                        J(r) = (sinh(sqrt(b) r) / (sqrt(b) r))^{n-1},
///                        J = 1 when b = 0.
///
/// The dimension may be any positive real; sigma is a free parameter of the
/// homogeneous backend (the paper-level normalization of the quasi-sphere
/// area is not determined by the dimension alone) and defaults to 1.
class RadialGeometry {
 public:
  static RadialGeometry homogeneous(double hom_dim, double sphere_area = 1.0);
  static RadialGeometry hyperbolic(double dim);
  static RadialGeometry cartan_hadamard(double dim, double curvature_b);

  GeometryKind kind() const { return kind_; }
  double dim() const { return dim_; }
  double curvature_b() const { return b_; }
  double sphere_area() const { return sigma_; }

  /// Lambda(r); throws std::domain_error for r <= 0.
  double surface_density(double r) const;
  /// log Lambda(r), stable for very small and very large r.
  double log_surface_density(double r) const;

  TailProfile tail_profile() const;
  EdgeBehavior behavior_at_zero() const;
  EdgeBehavior behavior_at_inf() const;

 private:
  RadialGeometry(GeometryKind kind, double dim, double b, double sigma)
      : kind_(kind), dim_(dim), b_(b), sigma_(sigma) {}

  GeometryKind kind_;
  double dim_;
  double b_;
  double sigma_;
};

/// Free-function spellings of the member operations.
double surface_density(const RadialGeometry& geo, double r);
TailProfile tail_profile(const RadialGeometry& geo);

}  // namespace bihardy

#endif

#ifndef BIHARDY_CLASSIFY_HPP
#define BIHARDY_CLASSIFY_HPP

#include <string>
#include <vector>

#include "bihardy/exponents.hpp"
#include "bihardy/geometry.hpp"

namespace bihardy {

/// Power-type weight datum: u = w^alpha, v_i = w^{beta_i} where w(r) is the
/// geometry's radial gauge (r for the homogeneous and flat backends,
/// sinh r for hyperbolic, sinh(sqrt(b) r) for curved Cartan-Hadamard).
struct PowerDatum {
  RadialGeometry geometry;
  double alpha;
  double beta1;
  double beta2;
  ExponentSystem exps;
};

/// One evaluated parameter condition with its numeric slack.
struct ConditionSlack {
  std::string name;
  double value = 0.0;     // evaluated left side
  std::string relation;   // "<", ">", "==", "<=", ">="
  double bound = 0.0;
  bool satisfied = false;
  bool borderline = false;
};

struct Verdict {
  enum class Kind { Holds, Fails, HoldsSufficient, Unknown, NotCovered };
  Kind kind = Kind::Unknown;
  std::string reason;
  std::vector<ConditionSlack> conditions;
};

std::string to_string(Verdict::Kind kind);

/// Exact two-sided classification for power weights on the homogeneous
/// backend (parameter cases I and II; others are not covered).
Verdict classify_homogeneous(const PowerDatum& datum);

/// Sufficiency-only classification for sinh-power weights on the hyperbolic
/// backend (case I only).  Fails fires on the named necessary convergence
/// conditions; outside both the sufficient bands and the failure conditions
/// the verdict is Unknown.
Verdict classify_hyperbolic(const PowerDatum& datum);

/// Constant-curvature Cartan-Hadamard: delegates to the flat classifier with
/// Q = n when b = 0, and to the hyperbolic exponent conditions when b > 0
/// (the curvature scale moves constants, not finiteness).
Verdict classify_cartan_hadamard(const PowerDatum& datum);

}  // namespace bihardy

#endif

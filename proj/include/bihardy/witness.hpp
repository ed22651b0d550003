#ifndef BIHARDY_WITNESS_HPP
#define BIHARDY_WITNESS_HPP

#include <cstdint>
#include <vector>

#include "bihardy/reduction.hpp"

namespace bihardy {

/// Search box for the truncated-power family parameters.
struct ParamBox {
  double a_min = -3.0;
  double a_max = 3.0;
  double log_tlo_min = -9.0;
  double log_tlo_max = 2.0;
  double log_thi_min = -8.0;
  double log_thi_max = 9.0;
};

struct WitnessSearchConfig {
  int budget = 2000;  // maximum ratio evaluations across all restarts
  int restarts = 8;
  ParamBox box;
  std::uint64_t seed = 1;
};

struct TraceRow {
  int eval_index;
  double a1, a2, log_tlo, log_thi;
  double ratio;
};

struct RatioWitness {
  double ratio = 0.0;
  double a1 = 0.0, a2 = 0.0;
  double t_lo = 0.0, t_hi = 0.0;
  int evals = 0;
  std::vector<TraceRow> trace;
};

struct WitnessDatum {
  LineWeights lw;
  ExponentSystem exps;
  QuadConfig quad;
};

/// Derivative-free simplex descent on -ratio over the truncated-power family
/// F_i = t^{a_i} on a shared window (t_lo, t_hi).  Restarts alternate between
/// balance-informed starting exponents (when symbolic weight tags exist) and
/// seeded random points; deterministic for a fixed seed.  Throws
/// std::runtime_error when no evaluation in the box is valid.
RatioWitness search_best_ratio(const WitnessDatum& datum, const WitnessSearchConfig& cfg);

/// Homogeneity degree s of the ratio under window dilation
/// (t_lo, t_hi) -> (lambda t_lo, lambda t_hi):  ratio_lambda = lambda^s ratio.
/// Defined for all-power weights on the homogeneous backend; s equals the
/// exponent balance
///   (alpha+Q)/q + (beta1(1-p1')+Q)/p1' + (beta2(1-p2')+Q)/p2'
/// independently of the family exponents (a1, a2).  s = 0 exactly at balance.
double dilation_exponent(const RadialGeometry& geo, const WeightTriple& w,
                         const ExponentSystem& exps, double a1, double a2);

/// Ratio of the two sides of the classical weighted one-dimensional Hardy
/// inequality for the near-extremal family f(x) = x^{s(delta)} on (0, 1),
/// s(delta) = -(1+eps)/p + delta.  The value is strictly below the sharp
/// constant (p/(p-1-eps))^p and increases as delta decreases to 0.
double classic_hardy_calibration(double p, double eps, double delta, const QuadConfig& cfg = {});

}  // namespace bihardy

#endif

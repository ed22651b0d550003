#ifndef BIHARDY_CONDITIONS_HPP
#define BIHARDY_CONDITIONS_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bihardy/exponents.hpp"
#include "bihardy/weights.hpp"

namespace bihardy {

/// Result of evaluating the weight conditions for one configuration.
/// B values use +inf for divergent quantities.  "B6_alt" carries the
/// second reading of the B6 outer exponent (k/r1 instead of the printed
/// k/r2); the two coincide on symmetric data.
struct ConditionReport {
  CaseId case_id;
  std::map<std::string, double> b;
  std::vector<std::string> required;  // which quantities the active case needs
  std::optional<std::pair<double, double>> bracket;
  bool holds = false;
  bool undetermined = false;
  std::vector<std::string> diagnostics;
};

struct SupOptions {
  double t_lo = 1e-6;
  double t_hi = 1e6;
  int coarse_nodes = 121;
  double edge_slope = 0.02;  // log-log slope above which edge growth means +inf
};

/// Supremum of a nonnegative function (possibly taking +inf) over (0, inf):
/// coarse scan on log-spaced nodes, golden-section refinement around local
/// maxima, +inf when a node is +inf or the values climb monotonically into a
/// grid edge faster than the slope threshold.
double sup_over_t(const std::function<double(double)>& g, const SupOptions& opt = {});

/// One factor g_i^{e_i} of a supremum integrand, in log space with optional
/// symbolic edge behavior (which decides boundedness at the edges exactly).
struct SupFactor {
  std::function<double(double)> log_f;
  double exponent = 1.0;
  std::optional<EdgeBehavior> at_zero;
  std::optional<EdgeBehavior> at_inf;
};

/// log of sup over (0, inf) of a product of positive factors.
double log_sup_of_product(std::span<const SupFactor> factors, const SupOptions& opt = {});

/// The individual weight conditions.  +inf signals divergence; an
/// UndeterminedError propagates classification failures.
double eval_B1(const CumulativeKernels& ker, const ExponentSystem& exps);
double eval_B2(const CumulativeKernels& ker, const LineWeights& lw, const ExponentSystem& exps,
               const QuadConfig& cfg = {});
double eval_B3(const CumulativeKernels& ker, const LineWeights& lw, const ExponentSystem& exps,
               const QuadConfig& cfg = {});
double eval_B4(const CumulativeKernels& ker, const LineWeights& lw, const ExponentSystem& exps,
               const QuadConfig& cfg = {});
double eval_B5(const CumulativeKernels& ker, const LineWeights& lw, const ExponentSystem& exps,
               const QuadConfig& cfg = {});
/// verbatim_outer selects the printed outer exponent k/r2 (true) or the
/// symmetric reading k/r1 (false).
double eval_B6(const CumulativeKernels& ker, const LineWeights& lw, const ExponentSystem& exps,
               bool verbatim_outer = true, const QuadConfig& cfg = {});

/// Best-constant bracket for the active case; absent for case IV (finiteness
/// characterization only) and whenever a required quantity is not finite.
std::optional<std::pair<double, double>> bracket_constant(const CaseId& case_id,
                                                          const std::map<std::string, double>& b,
                                                          const ExponentSystem& exps);

/// Full pipeline: line weights -> kernels -> case dispatch -> required
/// conditions -> bracket.
ConditionReport eval_report(const RadialGeometry& geo, const WeightTriple& w,
                            const ExponentSystem& exps, const QuadConfig& cfg = {});

}  // namespace bihardy

#endif

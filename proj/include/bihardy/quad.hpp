#ifndef BIHARDY_QUAD_HPP
#define BIHARDY_QUAD_HPP

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bihardy/asymptotics.hpp"
#include "bihardy/interp.hpp"
#include "bihardy/mathutil.hpp"

namespace bihardy {

/// Multiplier K such that the true integral is expected to lie within
/// [v - K*err, v + K*err] of a Value(v, err) outcome.
inline constexpr double kErrorCoverageFactor = 10.0;

struct QuadConfig {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  int max_depth = 10;     // refinement levels of the double-exponential rule
  int sniff_points = 12;  // geometric samples per endpoint classification
};

enum class Endpoint { Zero, Infinity };

struct QuadResult {
  enum class Kind { Value, Divergent, Undetermined };
  Kind kind = Kind::Value;
  double value = 0.0;
  double err_estimate = 0.0;
  Endpoint endpoint = Endpoint::Zero;  // meaningful for Divergent
  std::string diagnostic;              // meaningful for Undetermined

  static QuadResult make_value(double v, double err) {
    QuadResult r;
    r.kind = Kind::Value;
    r.value = v;
    r.err_estimate = err;
    return r;
  }
  static QuadResult divergent(Endpoint ep) {
    QuadResult r;
    r.kind = Kind::Divergent;
    r.endpoint = ep;
    r.value = kInf;
    return r;
  }
  static QuadResult undetermined(std::string why) {
    QuadResult r;
    r.kind = Kind::Undetermined;
    r.diagnostic = std::move(why);
    return r;
  }
  bool is_value() const { return kind == Kind::Value; }
  bool is_divergent() const { return kind == Kind::Divergent; }
  bool is_undetermined() const { return kind == Kind::Undetermined; }
};

/// Thrown when an endpoint cannot be classified as convergent or divergent.
struct UndeterminedError : std::runtime_error {
  UndeterminedError(Endpoint ep, const std::string& why)
      : std::runtime_error(why), endpoint(ep) {}
  Endpoint endpoint;
};

/// Adaptive integration of a nonnegative f over (lo, hi), 0 <= lo < hi <= inf.
/// Endpoint behavior at 0 and at infinity is classified first, by declared
/// hints when present and otherwise by slope sniffing on a geometric sample;
/// certain divergence short-circuits to Divergent without integrating.
/// Semi-infinite and zero-touching ranges are integrated after the smooth
/// monotone substitution t = e^y, with double-exponential refinement in y.
QuadResult integrate(const std::function<double(double)>& f, double lo, double hi,
                     const QuadConfig& cfg = {}, const EndpointHints& hints = {});

/// integrate() after splitting at interior breakpoints (kinks, support edges).
QuadResult integrate_piecewise(const std::function<double(double)>& f, double lo, double hi,
                               std::span<const double> breakpoints, const QuadConfig& cfg = {},
                               const EndpointHints& hints = {});

enum class EndpointClass { Converges, Diverges, Undetermined };

/// Classification of one endpoint from a declared asymptotic record.
EndpointClass classify_from_hint(const EdgeBehavior& b, Endpoint ep);

/// Classification by sampling: log-log slope fit on a geometric sample toward
/// the endpoint, with a log-linear (exponential) fallback at infinity.  `scale`
/// anchors the sample (distance from the other end of the range).
EndpointClass classify_by_sniffing(const std::function<double(double)>& f, Endpoint ep,
                                   double scale, const QuadConfig& cfg, std::string* diagnostic);

/// A positive function on (0, inf) given through its logarithm.
using LogDensity = std::function<double(double)>;

/// One factor f_i^{e_i} of a product integrand, with f_i given as log f_i.
struct LogFactor {
  LogDensity log_f;
  double exponent = 1.0;
  EndpointHints hints;
};

/// Integral over (lo, hi) of a product of positive factors, evaluated entirely
/// in log space so that factors of wildly different magnitude (cumulative
/// kernels raised to large powers times a line weight) do not overflow.
/// Outcome alphabet matches integrate(); divergence and undetermined endpoint
/// classifications propagate from the composed hints / sniffing.
QuadResult integrate_weighted_inner(std::span<const LogFactor> factors, double lo, double hi,
                                    const QuadConfig& cfg = {});

/// Log-spaced evaluation grid of the kernel memoization layer.
struct KernelGridSpec {
  double t_lo = 1e-6;
  double t_hi = 1e6;
  int nodes = 512;
};

/// Memoized cumulative integral of a positive density on (0, inf):
/// either t -> integral over (0, t] (Prefix) or t -> integral over [t, inf)
/// (Suffix).  Values are accumulated on a log-spaced grid (512 nodes on
/// [1e-6, 1e6] by default) by per-segment Gauss-Legendre in log space, with
/// matched asymptotic head/tail pieces, and interpolated monotonically in
/// log-log coordinates.  Queries outside the grid extend by the matched
/// asymptotics.  Immutable after construction.
class CumulativeIntegral {
 public:
  enum class Side { Prefix, Suffix };
  using GridSpec = KernelGridSpec;

  struct BuildOutcome {
    EndpointClass classification = EndpointClass::Converges;
    std::string diagnostic;
    std::shared_ptr<const CumulativeIntegral> integral;  // set iff Converges
  };

  /// Builds the cumulative integral; classification failure or divergence of
  /// the defining endpoint is reported in the outcome instead of a value.
  static BuildOutcome build(Side side, LogDensity log_f, const EndpointHints& hints,
                            const QuadConfig& cfg = {}, const GridSpec& grid = GridSpec());

  double log_value(double t) const;
  double value(double t) const { return std::exp(log_value(t)); }

  Side side() const { return side_; }
  const GridSpec& grid() const { return grid_; }

  /// Asymptotics of the cumulative function itself (available when the
  /// density carried hints).
  const std::optional<EdgeBehavior>& behavior_at_zero() const { return at_zero_; }
  const std::optional<EdgeBehavior>& behavior_at_inf() const { return at_inf_; }

 private:
  CumulativeIntegral() = default;

  Side side_ = Side::Prefix;
  GridSpec grid_;
  LogDensity log_f_;
  EndpointHints hints_;
  QuadConfig cfg_;
  MonotoneCubic interp_;  // (log t, log cumulative)
  double log_at_lo_ = -kInf;
  double log_at_hi_ = -kInf;
  std::optional<EdgeBehavior> at_zero_;
  std::optional<EdgeBehavior> at_inf_;
};

/// Cumulative-function asymptotics induced by density asymptotics.
std::optional<EdgeBehavior> prefix_behavior_at_zero(const std::optional<EdgeBehavior>& f_zero);
std::optional<EdgeBehavior> prefix_behavior_at_inf(const std::optional<EdgeBehavior>& f_inf);
std::optional<EdgeBehavior> suffix_behavior_at_zero(const std::optional<EdgeBehavior>& f_zero);
std::optional<EdgeBehavior> suffix_behavior_at_inf(const std::optional<EdgeBehavior>& f_inf);

namespace detail {
/// log of the integral of exp(log_g) over [ya, yb] (y-space), adaptive
/// Gauss-Legendre with mass-window truncation for steep segments.
double log_integral_segment(const LogDensity& log_g, double ya, double yb, double rel_tol);
}  // namespace detail

}  // namespace bihardy

#endif

#ifndef BIHARDY_INTERP_HPP
#define BIHARDY_INTERP_HPP

#include <vector>

namespace bihardy {

/// Monotone piecewise-cubic interpolation (Fritsch-Carlson limiter).
/// The interpolant never overshoots the data on monotone runs, which keeps
/// interpolated cumulative integrals monotone.  Reproduces linear data
/// exactly, so log-log interpolation of pure power laws is exact.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  MonotoneCubic(std::vector<double> x, std::vector<double> y);

  double operator()(double x) const;
  /// One-sided derivative of the interpolant.
  double derivative(double x) const;

  double x_front() const { return x_.front(); }
  double x_back() const { return x_.back(); }
  bool empty() const { return x_.empty(); }

 private:
  std::size_t segment(double x) const;

  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> slope_;  // tangent at each node
};

}  // namespace bihardy

#endif

#ifndef BIHARDY_EXPONENTS_HPP
#define BIHARDY_EXPONENTS_HPP

#include <optional>
#include <string>

namespace bihardy {

/// Integrability exponents (p1, p2, q) with their derived companions.
/// p1, p2 must lie in (1, inf); q in (0, inf).  The conditional quantities
/// exist exactly when their defining case requires them:
///   q'   conjugate of q, for q > 1
///   r_i  1/r_i = 1/q - 1/p_i, for q < p_i
///   k    1/k = 1/q - 1/p1 - 1/p2, when that is positive
class ExponentSystem {
 public:
  ExponentSystem(double p1, double p2, double q);

  double p1() const { return p1_; }
  double p2() const { return p2_; }
  double q() const { return q_; }
  double p1_conj() const { return p1_ / (p1_ - 1.0); }
  double p2_conj() const { return p2_ / (p2_ - 1.0); }
  double p_conj(int i) const { return i == 1 ? p1_conj() : p2_conj(); }
  double p(int i) const { return i == 1 ? p1_ : p2_; }

  std::optional<double> q_conj() const;
  std::optional<double> r1() const;
  std::optional<double> r2() const;
  std::optional<double> r(int i) const { return i == 1 ? r1() : r2(); }
  std::optional<double> k() const;

  /// The system with the roles of (p1, p2) exchanged.
  ExponentSystem transposed() const { return {p2_, p1_, q_}; }

 private:
  double p1_, p2_, q_;
};

struct CaseId {
  enum class Kind { I, II, III, IV, NotCovered };
  Kind kind = Kind::NotCovered;
  bool swapped = false;  // CaseII stated with p2 <= q < p1, handled by index swap
  std::string reason;    // NotCovered only

  bool operator==(const CaseId& o) const { return kind == o.kind && swapped == o.swapped; }
};

/// Parameter-case dispatch:
///   I    1 < max(p1,p2) <= q
///   II   min(p1,p2) <= q < max(p1,p2)    (swapped flag when p2 <= q < p1)
///   III  1 < q < min(p1,p2), 1/q <= 1/p1 + 1/p2
///   IV   1 < q < min(p1,p2), 1/q >  1/p1 + 1/p2
///   NotCovered for q <= 1
CaseId dispatch_case(const ExponentSystem& exps);

std::string to_string(CaseId::Kind kind);

}  // namespace bihardy

#endif

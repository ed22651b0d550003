#include "bihardy/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bihardy {

ExponentSystem::ExponentSystem(double p1, double p2, double q) : p1_(p1), p2_(p2), q_(q) {
  if (!(p1 > 1.0) || !std::isfinite(p1) || !(p2 > 1.0) || !std::isfinite(p2))
    throw std::domain_error("ExponentSystem: p1, p2 must lie in (1, inf)");
  if (!(q > 0.0) || !std::isfinite(q))
    throw std::domain_error("ExponentSystem: q must lie in (0, inf)");
}

std::optional<double> ExponentSystem::q_conj() const {
  if (q_ <= 1.0) return std::nullopt;
  return q_ / (q_ - 1.0);
}

std::optional<double> ExponentSystem::r1() const {
  if (!(q_ < p1_)) return std::nullopt;
  return 1.0 / (1.0 / q_ - 1.0 / p1_);
}

std::optional<double> ExponentSystem::r2() const {
  if (!(q_ < p2_)) return std::nullopt;
  return 1.0 / (1.0 / q_ - 1.0 / p2_);
}

std::optional<double> ExponentSystem::k() const {
  const double inv = 1.0 / q_ - 1.0 / p1_ - 1.0 / p2_;
  if (!(inv > 0.0)) return std::nullopt;
  return 1.0 / inv;
}

CaseId dispatch_case(const ExponentSystem& exps) {
  CaseId id;
  const double q = exps.q();
  if (q <= 1.0) {
    id.kind = CaseId::Kind::NotCovered;
    id.reason = "q <= 1 falls outside every listed parameter case";
    return id;
  }
  const double pmin = std::min(exps.p1(), exps.p2());
  const double pmax = std::max(exps.p1(), exps.p2());
  if (pmax <= q) {
    id.kind = CaseId::Kind::I;
  } else if (pmin <= q) {
    id.kind = CaseId::Kind::II;
    id.swapped = exps.p2() <= q;  // stated form is p1 <= q < p2
  } else if (1.0 / q <= 1.0 / exps.p1() + 1.0 / exps.p2()) {
    id.kind = CaseId::Kind::III;
  } else {
    id.kind = CaseId::Kind::IV;
  }
  return id;
}

std::string to_string(CaseId::Kind kind) {
  switch (kind) {
    case CaseId::Kind::I: return "I";
    case CaseId::Kind::II: return "II";
    case CaseId::Kind::III: return "III";
    case CaseId::Kind::IV: return "IV";
    case CaseId::Kind::NotCovered: return "NotCovered";
  }
  return "?";
}

}  // namespace bihardy

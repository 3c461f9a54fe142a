#pragma once

#include <optional>

#include "matmean/majorization.hpp"

namespace matmean {

enum class Verdict { holds, equality, violated, not_applicable };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::equality: return "equality";
    case Verdict::violated: return "violated";
    case Verdict::not_applicable: return "not_applicable";
  }
  return "?";
}

/// Weight regimes of the three-curve comparison. A boundary value belongs to
/// every regime whose inequality applies; the primary label is resolved by
/// containment in this order.
enum class Regime { interior, near_exterior, far_exterior };

inline const char* regime_name(Regime r) {
  switch (r) {
    case Regime::interior: return "interior";
    case Regime::near_exterior: return "near_exterior";
    case Regime::far_exterior: return "far_exterior";
  }
  return "?";
}

inline bool regime_contains(Regime r, double t) {
  switch (r) {
    case Regime::interior: return t >= 0.0 && t <= 1.0;
    case Regime::near_exterior: return (t >= -1.0 && t <= 0.0) || (t >= 1.0 && t <= 2.0);
    case Regime::far_exterior: return t <= -1.0 || t >= 2.0;
  }
  return false;
}

inline Regime classify_regime(double t) {
  for (Regime r : {Regime::interior, Regime::near_exterior, Regime::far_exterior})
    if (regime_contains(r, t)) return r;
  return Regime::far_exterior;  // unreachable: the regimes cover the line
}

inline std::vector<Regime> regimes_containing(double t) {
  std::vector<Regime> out;
  for (Regime r : {Regime::interior, Regime::near_exterior, Regime::far_exterior})
    if (regime_contains(r, t)) out.push_back(r);
  return out;
}

/// Parameters a verdict was produced under, carried for reporting and replay.
struct CheckContext {
  std::optional<double> t;
  std::optional<double> r;
  std::optional<double> q;
  std::string norm;
  uint64_t seed = 0;
  int64_t trial = -1;
  int n = 0;
  std::string note;
};

/// One inequality verdict: left value, right value, signed gap (rhs - lhs,
/// or the worst log-domain margin), tolerance, and the classification.
struct CheckResult {
  std::string check_id;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  double tol = 0.0;
  Verdict verdict = Verdict::holds;
  CheckContext context;
};

// gap >= -tol holds, |gap| <= tol is equality, below -tol is a violation.
inline Verdict classify_gap(double gap, double tol) {
  if (gap < -tol) return Verdict::violated;
  if (std::abs(gap) <= tol) return Verdict::equality;
  return Verdict::holds;
}

// all trace/norm comparisons share this: 1e-9 relative to the larger side.
inline double comparison_tol(double lhs, double rhs) {
  return 1e-9 * std::max({std::abs(lhs), std::abs(rhs), 1.0});
}

/// lhs <= rhs check with the standard tolerance policy.
inline CheckResult make_le_check(std::string check_id, double lhs, double rhs,
                                 CheckContext context = {}) {
  CheckResult r;
  r.check_id = std::move(check_id);
  r.lhs = lhs;
  r.rhs = rhs;
  r.gap = rhs - lhs;
  r.tol = comparison_tol(lhs, rhs);
  r.verdict = classify_gap(r.gap, r.tol);
  r.context = std::move(context);
  return r;
}

/// Wraps a majorization verdict into a check that expects at least
/// `expected`. When full log-majorization is required, the final prefix
/// margin is pinned near zero by the determinant identity, so the reported
/// gap is the worst margin over proper prefixes; that keeps "equality"
/// verdicts meaningful (commuting pairs) without drowning every passing
/// check in them.
inline CheckResult make_majorization_check(std::string check_id, const MajorizationVerdict& mv,
                                           int n, MajorizationRelation expected,
                                           CheckContext context = {}) {
  CheckResult r;
  r.check_id = std::move(check_id);
  r.tol = static_cast<double>(n) * 1e-9;
  const bool ok = expected == MajorizationRelation::log
                      ? mv.relation == MajorizationRelation::log
                      : mv.relation != MajorizationRelation::none;
  if (!ok) {
    r.gap = std::min(mv.worst_margin, -std::abs(mv.total_margin));
    r.verdict = Verdict::violated;
  } else {
    if (expected == MajorizationRelation::log && n > 1) {
      double proper = std::numeric_limits<double>::infinity();
      for (int k = 0; k + 1 < n; ++k)
        proper = std::min(proper, mv.prefix_margins[static_cast<size_t>(k)]);
      r.gap = proper;
    } else {
      r.gap = mv.worst_margin;
    }
    // the relation held under the compare's condition-aware slack; the raw
    // margin only distinguishes a strict gap from an equality case, and the
    // recorded tolerance widens to whatever slack admitted it
    r.tol = std::max(r.tol, -r.gap);
    r.verdict = r.gap > r.tol ? Verdict::holds : Verdict::equality;
  }
  r.context = std::move(context);
  return r;
}

}  // namespace matmean

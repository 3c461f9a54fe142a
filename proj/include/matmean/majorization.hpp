#pragma once

#include <limits>
#include <span>

#include "matmean/eig.hpp"

namespace matmean {

enum class MajorizationRelation { none, weak_log, log };

inline const char* relation_name(MajorizationRelation r) {
  switch (r) {
    case MajorizationRelation::none: return "none";
    case MajorizationRelation::weak_log: return "weak_log";
    case MajorizationRelation::log: return "log";
  }
  return "?";
}

/// Verdict of a log-majorization comparison a <_log b. Margins live in the
/// log domain: prefix_margins[k-1] = sum log b_i - sum log a_i over the top
/// k entries, so nonnegative margins mean the relation holds.
struct MajorizationVerdict {
  MajorizationRelation relation = MajorizationRelation::none;
  double worst_margin = 0.0;
  double total_margin = 0.0;
  std::vector<double> prefix_margins;
};

namespace detail {

inline void require_descending_nonneg(std::span<const double> v, const char* who) {
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i] < 0.0)
      throw std::domain_error(std::string(who) + ": negative entry " + std::to_string(v[i]));
    if (i > 0 && v[i] > v[i - 1] * (1.0 + 1e-12) + 1e-300)
      throw std::invalid_argument(std::string(who) + ": vector not sorted descending");
  }
}

}  // namespace detail

/// Prefix-product dominance of descending nonnegative vectors, computed as
/// sums of logarithms (raw products of e^{rH}-scale values overflow).
/// Entries below s_1 * 1e-14 count as exact zeros; a zero on the left makes
/// the prefix hold automatically, a zero appearing first on the right cannot.
/// Prefix slack >= -n*tol counts as holding; total log-products within
/// n*10*tol count as equal, upgrading weak_log to log.
inline MajorizationVerdict log_majorization_compare(std::span<const double> a,
                                                    std::span<const double> b,
                                                    double tol = 1e-10) {
  if (a.size() != b.size())
    throw std::invalid_argument("log_majorization_compare: length mismatch");
  detail::require_descending_nonneg(a, "log_majorization_compare(a)");
  detail::require_descending_nonneg(b, "log_majorization_compare(b)");
  const int n = static_cast<int>(a.size());

  const auto nonzero_count = [](std::span<const double> v) {
    if (v.empty() || v[0] == 0.0) return 0;
    const double floor = v[0] * 1e-14;
    int c = 0;
    while (c < static_cast<int>(v.size()) && v[static_cast<size_t>(c)] > floor) ++c;
    return c;
  };
  const int nza = nonzero_count(a);
  const int nzb = nonzero_count(b);

  // A prefix log-product read off an assembled spectrum is only accurate to
  // about n * eps * (s_1/s_k) per assembly stage, so near the condition
  // guard the slack must follow the conditioning of the prefix or the
  // verdict measures round-off. The constant covers the few assembly/eig
  // stages behind each compared matrix.
  const auto prefix_noise = [&](int k) {
    const double ratio = a[0] / a[static_cast<size_t>(k - 1)] +
                         b[0] / b[static_cast<size_t>(k - 1)];
    return 32.0 * 2.3e-16 * static_cast<double>(n) * ratio;
  };

  MajorizationVerdict verdict;
  verdict.prefix_margins.resize(static_cast<size_t>(n));
  double log_a = 0.0, log_b = 0.0;
  double worst = std::numeric_limits<double>::infinity();
  bool proper_ok = true, final_ok = true;
  for (int k = 1; k <= n; ++k) {
    const bool a_zero = k > nza;
    const bool b_zero = k > nzb;
    if (!a_zero) log_a += std::log(a[static_cast<size_t>(k - 1)]);
    if (!b_zero) log_b += std::log(b[static_cast<size_t>(k - 1)]);
    double margin, slack;
    if (a_zero) {
      margin = 0.0;  // left product is exactly zero: prefix holds regardless
      slack = static_cast<double>(n) * tol;
    } else if (b_zero) {
      margin = -std::numeric_limits<double>::max();  // 0 on the right, positive on the left
      slack = static_cast<double>(n) * tol;
    } else {
      margin = log_b - log_a;
      slack = std::max(static_cast<double>(n) * tol, prefix_noise(k));
    }
    verdict.prefix_margins[static_cast<size_t>(k - 1)] = margin;
    worst = std::min(worst, margin);
    const bool ok = margin >= -slack;
    if (k < n)
      proper_ok = proper_ok && ok;
    else
      final_ok = ok;
  }
  verdict.worst_margin = worst;

  // The final prefix is either one more inequality (weak_log) or an
  // equality with the 10x looser tolerance (log): an equality within its
  // tolerance subsumes the inequality, so the log relation is decided on
  // proper prefixes plus the total-product residual.
  const bool weak = proper_ok && final_ok;
  bool totals_equal = false;
  if (nza == n && nzb == n) {
    verdict.total_margin = log_b - log_a;
    const double total_tol =
        std::max(static_cast<double>(n) * 10.0 * tol, prefix_noise(n));
    totals_equal = std::abs(verdict.total_margin) <= total_tol;
  } else if (nza == nzb) {
    verdict.total_margin = 0.0;  // both products are exactly zero
    totals_equal = true;
  } else {
    verdict.total_margin = verdict.prefix_margins.back();
  }

  verdict.relation = proper_ok && totals_equal ? MajorizationRelation::log
                     : weak                    ? MajorizationRelation::weak_log
                                               : MajorizationRelation::none;
  return verdict;
}

namespace detail {

// Singular values of a matrix that is Hermitian within round-off are the
// sorted absolute eigenvalues; the direct Jacobi route avoids forming A*A,
// which would square the condition number and wash out small log-domain
// margins. General matrices fall back to the A*A route.
inline std::vector<double> majorization_singulars(const ComplexMatrix& a) {
  if (hermiticity_residual(a) <= 1e-12 * (1.0 + a.max_abs())) {
    std::vector<double> s = hermitian_eig(HermitianMatrix::symmetrized(a)).eigenvalues;
    for (double& v : s) v = std::abs(v);
    std::sort(s.rbegin(), s.rend());
    return s;
  }
  return singular_values(a);
}

}  // namespace detail

/// Matrix form: compare singular value vectors.
inline MajorizationVerdict matrix_log_majorization(const ComplexMatrix& a, const ComplexMatrix& b,
                                                   double tol = 1e-10) {
  require_same_dim(a, b, "matrix_log_majorization");
  const std::vector<double> sa = detail::majorization_singulars(a);
  const std::vector<double> sb = detail::majorization_singulars(b);
  return log_majorization_compare(sa, sb, tol);
}

enum class AdditiveRelation { none, weak, majorized };

/// Signed prefix-sum majorization of Eq-style descending real vectors.
/// Present for completeness of the definition; the inequality checks only ever
/// use the log variants on singular values.
struct AdditiveMajorizationVerdict {
  AdditiveRelation relation = AdditiveRelation::none;
  double worst_margin = 0.0;
  double total_margin = 0.0;
};

inline AdditiveMajorizationVerdict majorization_compare(std::span<const double> a,
                                                        std::span<const double> b,
                                                        double tol = 1e-10) {
  if (a.size() != b.size()) throw std::invalid_argument("majorization_compare: length mismatch");
  for (size_t i = 1; i < a.size(); ++i)
    if (a[i] > a[i - 1] + 1e-12 || b[i] > b[i - 1] + 1e-12)
      throw std::invalid_argument("majorization_compare: vectors not sorted descending");
  double sa = 0.0, sb = 0.0;
  double worst = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < a.size(); ++i) {
    sa += a[i];
    sb += b[i];
    worst = std::min(worst, sb - sa);
  }
  AdditiveMajorizationVerdict v;
  v.worst_margin = worst;
  v.total_margin = sb - sa;
  const double n = static_cast<double>(a.size());
  const bool weak = worst >= -n * tol;
  const bool equal = std::abs(v.total_margin) <= n * 10.0 * tol;
  v.relation = !weak ? AdditiveRelation::none
               : equal ? AdditiveRelation::majorized
                       : AdditiveRelation::weak;
  return v;
}

}  // namespace matmean

#pragma once

#include <span>

#include "matmean/eig.hpp"

namespace matmean {

/// Selects a unitarily invariant norm. All of them are functions of the
/// singular value vector alone.
struct NormSelector {
  enum class Kind { trace, frobenius, op, ky_fan, schatten };

  Kind kind = Kind::trace;
  int k = 0;       // ky_fan only
  double p = 0.0;  // schatten only

  static NormSelector trace() { return {Kind::trace, 0, 0.0}; }
  static NormSelector frobenius() { return {Kind::frobenius, 0, 0.0}; }
  static NormSelector operator_norm() { return {Kind::op, 0, 0.0}; }
  static NormSelector ky_fan(int k) { return {Kind::ky_fan, k, 0.0}; }
  static NormSelector schatten(double p) { return {Kind::schatten, 0, p}; }

  std::string id() const {
    switch (kind) {
      case Kind::trace: return "trace";
      case Kind::frobenius: return "frobenius";
      case Kind::op: return "operator";
      case Kind::ky_fan: return "kyfan" + std::to_string(k);
      case Kind::schatten: {
        std::ostringstream os;
        os << "schatten" << p;
        return os.str();
      }
    }
    return "?";
  }

  void validate(int n) const {
    if (kind == Kind::ky_fan && (k < 1 || k > n))
      throw std::invalid_argument("NormSelector: KyFan k = " + std::to_string(k) +
                                  " out of range 1.." + std::to_string(n));
    if (kind == Kind::schatten && !(p >= 1.0 && std::isfinite(p)))
      throw std::invalid_argument("NormSelector: Schatten p must be finite and >= 1");
  }

  // Strictly monotone under strict singular-value dominance: trace,
  // Frobenius, finite Schatten, and the full Ky Fan sum. The operator norm
  // and partial Ky Fan sums are not, and the equality characterization
  // does not apply to them.
  bool strictly_increasing(int n) const {
    switch (kind) {
      case Kind::trace:
      case Kind::frobenius:
      case Kind::schatten: return true;
      case Kind::op: return false;
      case Kind::ky_fan: return k == n;
    }
    return false;
  }
};

inline double ui_norm_from_singular_values(std::span<const double> s, const NormSelector& sel) {
  const int n = static_cast<int>(s.size());
  sel.validate(n);
  switch (sel.kind) {
    case NormSelector::Kind::trace: {
      double t = 0.0;
      for (double v : s) t += v;
      return t;
    }
    case NormSelector::Kind::frobenius: {
      double t = 0.0;
      for (double v : s) t += v * v;
      return std::sqrt(t);
    }
    case NormSelector::Kind::op:
      return s.empty() ? 0.0 : s[0];
    case NormSelector::Kind::ky_fan: {
      double t = 0.0;
      for (int i = 0; i < sel.k; ++i) t += s[static_cast<size_t>(i)];
      return t;
    }
    case NormSelector::Kind::schatten: {
      double t = 0.0;
      for (double v : s) t += std::pow(v, sel.p);
      return std::pow(t, 1.0 / sel.p);
    }
  }
  return 0.0;
}

inline double ui_norm(const ComplexMatrix& a, const NormSelector& sel) {
  const std::vector<double> s = singular_values(a);
  return ui_norm_from_singular_values(s, sel);
}

/// The default comparison set: trace, Frobenius, operator, and every Ky Fan
/// norm of the dimension.
inline std::vector<NormSelector> default_norms(int n) {
  std::vector<NormSelector> v{NormSelector::trace(), NormSelector::frobenius(),
                              NormSelector::operator_norm()};
  for (int k = 1; k <= n; ++k) v.push_back(NormSelector::ky_fan(k));
  return v;
}

}  // namespace matmean

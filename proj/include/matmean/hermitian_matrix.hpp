#pragma once

#include <sstream>

#include "matmean/complex_matrix.hpp"

namespace matmean {

inline double hermiticity_residual(const ComplexMatrix& a) {
  double r = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = i; j < a.dim(); ++j)
      r = std::max(r, std::abs(a(i, j) - std::conj(a(j, i))));
  return r;
}

/// Hermitian refinement of ComplexMatrix. Construction rejects matrices whose
/// asymmetry exceeds 1e-12 * (1 + max|A|) and symmetrizes the rest via
/// (A + A*)/2, so round-off drift never leaks into spectral calls.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const ComplexMatrix& a) {
    if (!a.all_finite()) throw std::invalid_argument("HermitianMatrix: non-finite entries");
    const double residual = hermiticity_residual(a);
    const double bound = 1e-12 * (1.0 + a.max_abs());
    if (residual > bound) {
      std::ostringstream os;
      os << "HermitianMatrix: asymmetry residual " << residual << " exceeds " << bound;
      throw std::invalid_argument(os.str());
    }
    const int n = a.dim();
    inner_ = ComplexMatrix(n);
    for (int i = 0; i < n; ++i) {
      inner_(i, i) = Complex(a(i, i).real(), 0.0);
      for (int j = i + 1; j < n; ++j) {
        const Complex v = 0.5 * (a(i, j) + std::conj(a(j, i)));
        inner_(i, j) = v;
        inner_(j, i) = std::conj(v);
      }
    }
  }

  static HermitianMatrix zero(int n) { return HermitianMatrix(ComplexMatrix::zeros(n)); }
  static HermitianMatrix identity(int n) { return HermitianMatrix(ComplexMatrix::identity(n)); }
  static HermitianMatrix diagonal(const std::vector<double>& d) {
    return HermitianMatrix(ComplexMatrix::diagonal(d));
  }

  /// (A + A*)/2 without the asymmetry bound: for products like A B A that
  /// are Hermitian by algebra but accumulate round-off drift across a wide
  /// dynamic range. Every intermediate result goes through here before the
  /// next spectral call.
  static HermitianMatrix symmetrized(const ComplexMatrix& a) {
    if (!a.all_finite())
      throw std::invalid_argument("HermitianMatrix::symmetrized: non-finite entries");
    HermitianMatrix h(ComplexMatrix::zeros(a.dim()));
    const int n = a.dim();
    for (int i = 0; i < n; ++i) {
      h.inner_(i, i) = Complex(a(i, i).real(), 0.0);
      for (int j = i + 1; j < n; ++j) {
        const Complex v = 0.5 * (a(i, j) + std::conj(a(j, i)));
        h.inner_(i, j) = v;
        h.inner_(j, i) = std::conj(v);
      }
    }
    return h;
  }

  int dim() const { return inner_.dim(); }
  const ComplexMatrix& matrix() const { return inner_; }
  const Complex& operator()(int i, int j) const { return inner_(i, j); }

  double trace() const { return inner_.trace().real(); }

 private:
  ComplexMatrix inner_;
};

inline HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix(a.matrix() + b.matrix());
}

inline HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix(a.matrix() - b.matrix());
}

inline HermitianMatrix operator*(double s, const HermitianMatrix& a) {
  return HermitianMatrix(s * a.matrix());
}

/// Frobenius norm of HK - KH; zero iff the pair is simultaneously
/// diagonalizable (within round-off).
inline double commutator_norm(const HermitianMatrix& h, const HermitianMatrix& k) {
  require_same_dim(h.matrix(), k.matrix(), "commutator_norm");
  return (h.matrix() * k.matrix() - k.matrix() * h.matrix()).frobenius_norm();
}

}  // namespace matmean

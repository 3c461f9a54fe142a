#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace matmean {

using Complex = std::complex<double>;

/// Dense square complex matrix, row-major. The universal carrier type;
/// refinement wrappers (Hermitian, positive definite) build on it.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(int n) : n_(n), data_(static_cast<size_t>(n) * n) {
    if (n < 1) throw std::invalid_argument("ComplexMatrix: dimension must be >= 1");
  }

  static ComplexMatrix zeros(int n) { return ComplexMatrix(n); }

  static ComplexMatrix identity(int n) {
    ComplexMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(const std::vector<double>& d) {
    ComplexMatrix m(static_cast<int>(d.size()));
    for (int i = 0; i < m.dim(); ++i) m(i, i) = d[static_cast<size_t>(i)];
    return m;
  }

  // Row-major initializer, for fixtures: {{1,0},{0,1}}.
  static ComplexMatrix from_rows(const std::vector<std::vector<Complex>>& rows) {
    const int n = static_cast<int>(rows.size());
    ComplexMatrix m(n);
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(rows[static_cast<size_t>(i)].size()) != n)
        throw std::invalid_argument("ComplexMatrix: ragged initializer");
      for (int j = 0; j < n; ++j) m(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
    return m;
  }

  int dim() const { return n_; }

  Complex& operator()(int i, int j) { return data_[index(i, j)]; }
  const Complex& operator()(int i, int j) const { return data_[index(i, j)]; }

  ComplexMatrix adjoint() const {
    ComplexMatrix r(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
  }

  Complex trace() const {
    Complex t = 0.0;
    for (int i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const Complex& z : data_) s += std::norm(z);
    return std::sqrt(s);
  }

  double max_abs() const {
    double m = 0.0;
    for (const Complex& z : data_) m = std::max(m, std::abs(z));
    return m;
  }

  bool all_finite() const {
    for (const Complex& z : data_)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
  }

  bool same_dim(const ComplexMatrix& o) const { return n_ == o.n_; }

 private:
  int n_ = 0;
  std::vector<Complex> data_;

  size_t index(int i, int j) const { return static_cast<size_t>(i) * n_ + j; }
};

inline void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* where) {
  if (!a.same_dim(b))
    throw std::invalid_argument(std::string(where) + ": dimension mismatch (" +
                                std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) + ")");
}

inline ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "operator+");
  ComplexMatrix r(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) r(i, j) = a(i, j) + b(i, j);
  return r;
}

inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "operator-");
  ComplexMatrix r(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) r(i, j) = a(i, j) - b(i, j);
  return r;
}

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "operator*");
  const int n = a.dim();
  ComplexMatrix r(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex(0.0)) continue;
      for (int j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

inline ComplexMatrix operator*(double s, const ComplexMatrix& a) {
  ComplexMatrix r(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) r(i, j) = s * a(i, j);
  return r;
}

inline ComplexMatrix operator*(const ComplexMatrix& a, double s) { return s * a; }

}  // namespace matmean

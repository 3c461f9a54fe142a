#pragma once

#include <algorithm>
#include <numeric>

#include "matmean/hermitian_matrix.hpp"

namespace matmean {

/// Eigenvalues (real, descending) and a unitary matrix of column eigenvectors.
struct SpectralDecomposition {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;

  int dim() const { return eigenvectors.dim(); }
  double min_eigenvalue() const { return eigenvalues.back(); }
  double max_eigenvalue() const { return eigenvalues.front(); }

  // U diag(f(lambda)) U*; the assembly primitive behind all matrix functions.
  template <class F>
  ComplexMatrix assemble(F&& f) const {
    const int n = dim();
    const ComplexMatrix& u = eigenvectors;
    std::vector<double> fv(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) fv[static_cast<size_t>(i)] = f(eigenvalues[static_cast<size_t>(i)]);
    ComplexMatrix r(n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        Complex s = 0.0;
        for (int k = 0; k < n; ++k) s += u(i, k) * fv[static_cast<size_t>(k)] * std::conj(u(j, k));
        r(i, j) = s;
        if (j > i) r(j, i) = std::conj(s);
      }
    for (int i = 0; i < n; ++i) r(i, i) = Complex(r(i, i).real(), 0.0);
    return r;
  }
};

namespace detail {

inline double offdiag_frobenius(const ComplexMatrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// One two-sided unitary rotation zeroing a(p,q). The 2x2 core is the complex
// Givens analogue: with a(p,q) = |b| u, the rotation mixes columns p,q by
// (c, s) where s carries the phase conj(u) and tan(theta) solves
// t^2 - 2*tau*t - 1 = 0, tau = (a_qq - a_pp) / (2|b|). Smaller root keeps
// the angle below 45 degrees.
inline void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, int p, int q) {
  const Complex apq = a(p, q);
  const double abs_apq = std::abs(apq);
  if (abs_apq == 0.0) return;
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const Complex phase = apq / abs_apq;
  const double tau = (aqq - app) / (2.0 * abs_apq);
  const double root = std::sqrt(1.0 + tau * tau);
  const double t = (tau >= 0.0) ? -1.0 / (tau + root) : 1.0 / (-tau + root);
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double sigma = t * c;
  const Complex s = sigma * std::conj(phase);   // J(q,p); J(p,q) = -conj(s)
  const Complex sbar = std::conj(s);

  const int n = a.dim();
  for (int i = 0; i < n; ++i) {  // A <- A J
    const Complex aip = a(i, p), aiq = a(i, q);
    a(i, p) = c * aip + s * aiq;
    a(i, q) = -sbar * aip + c * aiq;
  }
  for (int j = 0; j < n; ++j) {  // A <- J* A
    const Complex apj = a(p, j), aqj = a(q, j);
    a(p, j) = c * apj + sbar * aqj;
    a(q, j) = -s * apj + c * aqj;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = Complex(a(p, p).real(), 0.0);
  a(q, q) = Complex(a(q, q).real(), 0.0);
  for (int i = 0; i < n; ++i) {  // V <- V J
    const Complex vip = v(i, p), viq = v(i, q);
    v(i, p) = c * vip + s * viq;
    v(i, q) = -sbar * vip + c * viq;
  }
}

}  // namespace detail

inline constexpr double kJacobiOffdiagTol = 1e-14;
inline constexpr int kJacobiMaxSweeps = 30;

/// Cyclic Jacobi diagonalization of a Hermitian matrix. Converges when the
/// off-diagonal Frobenius norm drops below 1e-14 * ||A||_F; throws after 30
/// sweeps, naming the residual.
inline SpectralDecomposition hermitian_eig(const HermitianMatrix& h) {
  const int n = h.dim();
  ComplexMatrix a = h.matrix();
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = a.frobenius_norm();
  const double tol = kJacobiOffdiagTol * scale;

  double off = detail::offdiag_frobenius(a);
  int sweep = 0;
  while (off > tol) {
    if (sweep++ >= kJacobiMaxSweeps) {
      std::ostringstream os;
      os << "hermitian_eig: no convergence after " << kJacobiMaxSweeps
         << " sweeps; off-diagonal Frobenius norm = " << off;
      throw std::runtime_error(os.str());
    }
    const double skip = tol / std::max(1, n);
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q)
        if (std::abs(a(p, q)) > skip) detail::jacobi_rotate(a, v, p, q);
    off = detail::offdiag_frobenius(a);
  }

  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return a(i, i).real() > a(j, j).real(); });

  SpectralDecomposition d;
  d.eigenvalues.resize(static_cast<size_t>(n));
  d.eigenvectors = ComplexMatrix(n);
  for (int j = 0; j < n; ++j) {
    d.eigenvalues[static_cast<size_t>(j)] = a(order[static_cast<size_t>(j)], order[static_cast<size_t>(j)]).real();
    for (int i = 0; i < n; ++i) d.eigenvectors(i, j) = v(i, order[static_cast<size_t>(j)]);
  }

  // Postconditions: unitarity and reconstruction.
  const ComplexMatrix& u = d.eigenvectors;
  double unit_res = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Complex s = 0.0;
      for (int k = 0; k < n; ++k) s += std::conj(u(k, i)) * u(k, j);
      unit_res = std::max(unit_res, std::abs(s - (i == j ? Complex(1.0) : Complex(0.0))));
    }
  if (unit_res > 1e-10)
    throw std::runtime_error("hermitian_eig: eigenvector unitarity residual " + std::to_string(unit_res));
  const double rec = (d.assemble([](double x) { return x; }) - h.matrix()).frobenius_norm();
  if (rec > 1e-10 * (1.0 + scale))
    throw std::runtime_error("hermitian_eig: reconstruction residual " + std::to_string(rec));
  return d;
}

/// Singular values in descending order, as the square roots of the spectrum
/// of A*A. Only the values (not vectors) feed the downstream comparisons.
inline std::vector<double> singular_values(const ComplexMatrix& a) {
  if (!a.all_finite()) throw std::invalid_argument("singular_values: non-finite entries");
  const SpectralDecomposition d = hermitian_eig(HermitianMatrix(a.adjoint() * a));
  std::vector<double> s(d.eigenvalues.size());
  for (size_t i = 0; i < s.size(); ++i) s[i] = std::sqrt(std::max(0.0, d.eigenvalues[i]));
  return s;
}

}  // namespace matmean

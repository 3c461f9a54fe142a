#pragma once

#include "matmean/spectral.hpp"

namespace matmean {

namespace detail {

inline void require_pair(const PositiveDefiniteMatrix& x, const PositiveDefiniteMatrix& y,
                         const char* where) {
  require_same_dim(x.matrix(), y.matrix(), where);
}

// X^{-1/2} Y X^{-1/2}, the congruence that moves the pair to (I, W).
inline HermitianMatrix whitened(const PositiveDefiniteMatrix& x, const PositiveDefiniteMatrix& y) {
  const ComplexMatrix x_inv_half =
      x.decomposition().assemble([](double lam) { return 1.0 / std::sqrt(lam); });
  return HermitianMatrix::symmetrized(x_inv_half * y.matrix() * x_inv_half);
}

}  // namespace detail

/// Weighted geometric mean X^{1/2} (X^{-1/2} Y X^{-1/2})^t X^{1/2}, evaluated
/// exactly as written, for any real t. This is the constant-speed geodesic
/// through X (t=0) and Y (t=1) extended to the whole line.
inline PositiveDefiniteMatrix geometric_mean(const PositiveDefiniteMatrix& x,
                                             const PositiveDefiniteMatrix& y, double t) {
  detail::require_pair(x, y, "geometric_mean");
  if (!std::isfinite(t)) throw std::invalid_argument("geometric_mean: non-finite weight");
  const ComplexMatrix x_half = x.decomposition().assemble([](double lam) { return std::sqrt(lam); });
  const HermitianMatrix w = detail::whitened(x, y);
  const HermitianMatrix w_t = mpow(w, t);  // range error on overflow
  const ComplexMatrix m = x_half * w_t.matrix() * x_half;
  if (!m.all_finite())
    throw std::range_error("geometric_mean: overflow at t = " + std::to_string(t));
  PositiveDefiniteMatrix result{HermitianMatrix::symmetrized(m)};

  // det(X #_t Y) = det(X)^{1-t} det(Y)^t, checked in the log domain. The
  // small eigenvalues of the assembled product carry an absolute error of
  // order ||M|| * eps, so the achievable log-det accuracy degrades with the
  // condition number; the tolerance accounts for that.
  const double expected = (1.0 - t) * x.log_det() + t * y.log_det();
  const double got = result.log_det();
  const double kappa =
      result.decomposition().max_eigenvalue() / result.decomposition().min_eigenvalue();
  const double tol = std::max(1e-9 * std::max(1.0, std::abs(expected)),
                              2e-14 * static_cast<double>(x.dim()) * kappa);
  if (std::abs(got - expected) > tol)
    throw std::runtime_error("geometric_mean: log-determinant identity violated by " +
                             std::to_string(got - expected));
  return result;
}

/// Geodesic distance delta(X, Y) = || log(X^{-1/2} Y X^{-1/2}) ||_F in the
/// Hilbert-Schmidt norm (the closed form of the arc-length infimum).
inline double riemannian_distance(const PositiveDefiniteMatrix& x,
                                  const PositiveDefiniteMatrix& y) {
  detail::require_pair(x, y, "riemannian_distance");
  const SpectralDecomposition d = hermitian_eig(detail::whitened(x, y));
  detail::require_spectrum_positive(d, "riemannian_distance");
  double s = 0.0;
  for (double lam : d.eigenvalues) {
    const double l = std::log(lam);
    s += l * l;
  }
  return std::sqrt(s);
}

/// A* X A for invertible A; positivity is preserved (Sylvester).
inline PositiveDefiniteMatrix congruence(const ComplexMatrix& a, const PositiveDefiniteMatrix& x) {
  require_same_dim(a, x.matrix(), "congruence");
  const std::vector<double> s = singular_values(a);
  if (s.back() <= 1e-10 * s.front()) {
    std::ostringstream os;
    os << "congruence: matrix is near-singular (smallest/largest singular value = "
       << s.back() << "/" << s.front() << ")";
    throw std::domain_error(os.str());
  }
  return PositiveDefiniteMatrix(HermitianMatrix::symmetrized(a.adjoint() * x.matrix() * a));
}

}  // namespace matmean

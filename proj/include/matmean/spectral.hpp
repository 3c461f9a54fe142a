#pragma once

#include "matmean/positive_matrix.hpp"

namespace matmean {

// Relative floor under which a spectrum no longer counts as positive
// definite for log/fractional-power purposes. Below it the operations
// refuse instead of clamping; inequality verdicts must not be contaminated
// by regularization.
inline constexpr double kPositivityEps = 1e-12;

// exp(x) overflows double just above this.
inline constexpr double kExpOverflow = 709.0;

namespace detail {

inline void require_spectrum_positive(const SpectralDecomposition& d, const char* op) {
  const double lo = d.min_eigenvalue();
  const double hi = d.max_eigenvalue();
  if (!(hi > 0.0) || lo <= kPositivityEps * hi) {
    std::ostringstream os;
    os << op << ": spectrum not positive definite (min eigenvalue " << lo
       << ", threshold " << kPositivityEps * hi << ")";
    throw std::domain_error(os.str());
  }
}

inline bool is_nonneg_integer(double t) {
  return t >= 0.0 && t == std::floor(t);
}

}  // namespace detail

/// U f(Lambda) U*. The result is re-symmetrized by the HermitianMatrix
/// constructor before any further spectral call.
template <class F>
HermitianMatrix spectral_function(const SpectralDecomposition& d, F&& f) {
  for (double lam : d.eigenvalues) {
    const double y = f(lam);
    if (!std::isfinite(y)) {
      std::ostringstream os;
      os << "spectral_function: f not finite at eigenvalue " << lam;
      throw std::domain_error(os.str());
    }
  }
  return HermitianMatrix(d.assemble(f));
}

template <class F>
HermitianMatrix spectral_function(const HermitianMatrix& a, F&& f) {
  return spectral_function(hermitian_eig(a), std::forward<F>(f));
}

inline PositiveDefiniteMatrix mexp(const SpectralDecomposition& d) {
  if (d.max_eigenvalue() > kExpOverflow)
    throw std::range_error("mexp: eigenvalue " + std::to_string(d.max_eigenvalue()) +
                           " overflows the exponential");
  return PositiveDefiniteMatrix(spectral_function(d, [](double x) { return std::exp(x); }));
}

inline PositiveDefiniteMatrix mexp(const HermitianMatrix& h) { return mexp(hermitian_eig(h)); }

inline HermitianMatrix mlog(const SpectralDecomposition& d) {
  detail::require_spectrum_positive(d, "mlog");
  return spectral_function(d, [](double x) { return std::log(x); });
}

inline HermitianMatrix mlog(const PositiveDefiniteMatrix& x) { return mlog(x.decomposition()); }

inline HermitianMatrix mlog(const HermitianMatrix& h) { return mlog(hermitian_eig(h)); }

inline HermitianMatrix mpow(const SpectralDecomposition& d, double t) {
  if (!std::isfinite(t)) throw std::invalid_argument("mpow: non-finite exponent");
  if (!detail::is_nonneg_integer(t)) detail::require_spectrum_positive(d, "mpow");
  if (d.min_eigenvalue() > 0.0) {
    // overflow guard: lambda^t = exp(t log lambda)
    for (double lam : d.eigenvalues)
      if (t * std::log(lam) > kExpOverflow)
        throw std::range_error("mpow: exponent " + std::to_string(t) +
                               " overflows on eigenvalue " + std::to_string(lam));
  }
  return spectral_function(d, [t](double x) { return std::pow(x, t); });
}

inline HermitianMatrix mpow(const HermitianMatrix& h, double t) {
  return mpow(hermitian_eig(h), t);
}

inline PositiveDefiniteMatrix mpow(const PositiveDefiniteMatrix& x, double t) {
  return PositiveDefiniteMatrix(mpow(x.decomposition(), t));
}

}  // namespace matmean

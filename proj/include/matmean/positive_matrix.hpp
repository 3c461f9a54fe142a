#pragma once

#include "matmean/eig.hpp"

namespace matmean {

/// Strictly positive definite refinement. Positivity is checked at
/// construction via a full eigendecomposition, which is kept — every
/// fractional power or logarithm of this matrix is then a cheap assembly.
class PositiveDefiniteMatrix {
 public:
  explicit PositiveDefiniteMatrix(const HermitianMatrix& h)
      : inner_(h), decomposition_(hermitian_eig(h)) {
    if (decomposition_.min_eigenvalue() <= 0.0) {
      std::ostringstream os;
      os << "PositiveDefiniteMatrix: smallest eigenvalue "
         << decomposition_.min_eigenvalue() << " is not positive";
      throw std::domain_error(os.str());
    }
  }

  explicit PositiveDefiniteMatrix(const ComplexMatrix& a)
      : PositiveDefiniteMatrix(HermitianMatrix(a)) {}

  static PositiveDefiniteMatrix identity(int n) {
    return PositiveDefiniteMatrix(HermitianMatrix::identity(n));
  }
  static PositiveDefiniteMatrix diagonal(const std::vector<double>& d) {
    return PositiveDefiniteMatrix(HermitianMatrix::diagonal(d));
  }

  int dim() const { return inner_.dim(); }
  const HermitianMatrix& hermitian() const { return inner_; }
  const ComplexMatrix& matrix() const { return inner_.matrix(); }
  const SpectralDecomposition& decomposition() const { return decomposition_; }

  double trace() const { return inner_.trace(); }

  double log_det() const {
    double s = 0.0;
    for (double lam : decomposition_.eigenvalues) s += std::log(lam);
    return s;
  }

 private:
  HermitianMatrix inner_;
  SpectralDecomposition decomposition_;
};

}  // namespace matmean

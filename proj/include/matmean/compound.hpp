#pragma once

#include "matmean/complex_matrix.hpp"

namespace matmean {

namespace detail {

// Determinant of the k x k submatrix of a picked by rows/cols, via LU with
// partial pivoting.
inline Complex minor_det(const ComplexMatrix& a, const std::vector<int>& rows,
                         const std::vector<int>& cols) {
  const int k = static_cast<int>(rows.size());
  std::vector<Complex> m(static_cast<size_t>(k) * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      m[static_cast<size_t>(i) * k + j] = a(rows[static_cast<size_t>(i)], cols[static_cast<size_t>(j)]);

  Complex det = 1.0;
  for (int c = 0; c < k; ++c) {
    int pivot = c;
    double best = std::abs(m[static_cast<size_t>(c) * k + c]);
    for (int r = c + 1; r < k; ++r) {
      const double v = std::abs(m[static_cast<size_t>(r) * k + c]);
      if (v > best) {
        best = v;
        pivot = r;
      }
    }
    if (best == 0.0) return 0.0;
    if (pivot != c) {
      for (int j = c; j < k; ++j)
        std::swap(m[static_cast<size_t>(pivot) * k + j], m[static_cast<size_t>(c) * k + j]);
      det = -det;
    }
    const Complex d = m[static_cast<size_t>(c) * k + c];
    det *= d;
    for (int r = c + 1; r < k; ++r) {
      const Complex f = m[static_cast<size_t>(r) * k + c] / d;
      if (f == Complex(0.0)) continue;
      for (int j = c; j < k; ++j)
        m[static_cast<size_t>(r) * k + j] -= f * m[static_cast<size_t>(c) * k + j];
    }
  }
  return det;
}

inline std::vector<std::vector<int>> lex_subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) cur[static_cast<size_t>(i)] = i;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[static_cast<size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++cur[static_cast<size_t>(i)];
    for (int j = i + 1; j < k; ++j) cur[static_cast<size_t>(j)] = cur[static_cast<size_t>(j - 1)] + 1;
  }
  return out;
}

}  // namespace detail

/// k-th compound (antisymmetric tensor power) matrix: the C(n,k) x C(n,k)
/// matrix of k x k minors, with row/column subsets in lexicographic order.
/// Multiplicative, adjoint-compatible, and its top singular value is the
/// product of the top k singular values of A.
inline ComplexMatrix compound_matrix(const ComplexMatrix& a, int k) {
  const int n = a.dim();
  if (k < 1 || k > n)
    throw std::invalid_argument("compound_matrix: k = " + std::to_string(k) +
                                " out of range 1.." + std::to_string(n));
  const std::vector<std::vector<int>> subsets = detail::lex_subsets(n, k);
  const int m = static_cast<int>(subsets.size());
  ComplexMatrix c(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      c(i, j) = detail::minor_det(a, subsets[static_cast<size_t>(i)], subsets[static_cast<size_t>(j)]);
  return c;
}

}  // namespace matmean

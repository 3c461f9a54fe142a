#pragma once

#include <cstdint>
#include <random>

#include "matmean/eig.hpp"

namespace matmean {

// splitmix64 output mix; used to spread seeds.
inline uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of an independent stream: trials (and sub-draws within a trial) get
/// their own generators, so parallel execution reproduces the sequential run.
inline uint64_t derive_seed(uint64_t master, uint64_t stream) {
  return mix64(master + (stream + 1) * 0x9e3779b97f4a7c15ULL);
}

/// Deterministic Gaussian stream. mt19937_64 is fully specified by the
/// standard and the Box-Muller step is spelled out here, so the draw sequence
/// depends only on the seed, not on the standard library.
class RandomStream {
 public:
  explicit RandomStream(uint64_t seed) : gen_(seed) {}

  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform01();
    while (u1 == 0.0) u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// H = (G + G*)/2 with G of i.i.d. complex Gaussian entries, each component
/// of standard deviation sigma. Hermitian by construction, bit for bit.
inline HermitianMatrix random_hermitian(int n, double sigma, RandomStream& rng) {
  if (n < 1) throw std::invalid_argument("random_hermitian: n must be >= 1");
  if (!(sigma > 0.0)) throw std::invalid_argument("random_hermitian: sigma must be > 0");
  ComplexMatrix g(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = Complex(sigma * rng.gaussian(), sigma * rng.gaussian());
  ComplexMatrix h(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) h(i, j) = 0.5 * (g(i, j) + std::conj(g(j, i)));
  return HermitianMatrix(h);
}

/// Haar-like random unitary: the eigenvector matrix of a random Hermitian.
inline ComplexMatrix random_unitary(int n, RandomStream& rng) {
  return hermitian_eig(random_hermitian(n, 1.0, rng)).eigenvectors;
}

/// Rescales a pair so its exponentials stay below the condition bound
/// kappa_max over the requested parameter box: the worst exponent spread of
/// r*((1-t)H + tK) (which also bounds the mean and the sandwiched products)
/// is held under log(kappa_max) by a common factor on both matrices.
/// Verdicts on wilder pairs would only measure double precision running out.
inline std::pair<HermitianMatrix, HermitianMatrix> guard_rescale(const HermitianMatrix& h,
                                                                 const HermitianMatrix& k,
                                                                 double t_lo, double t_hi,
                                                                 double r_max,
                                                                 double kappa_max = 1e8) {
  const auto radius = [](const HermitianMatrix& m) {
    const SpectralDecomposition d = hermitian_eig(m);
    return std::max(std::abs(d.max_eigenvalue()), std::abs(d.min_eigenvalue()));
  };
  const double rho_h = radius(h);
  const double rho_k = radius(k);
  double spread = 0.0;
  for (double t : {t_lo, t_hi, 0.0, 1.0})
    spread = std::max(spread, std::abs(1.0 - t) * rho_h + std::abs(t) * rho_k);
  spread *= 2.0 * std::max(1.0, r_max);
  const double limit = std::log(kappa_max);
  if (spread <= limit) return {h, k};
  const double s = limit / spread;
  return {HermitianMatrix(s * h.matrix()), HermitianMatrix(s * k.matrix())};
}

/// Draw a pair and apply the condition guard; "rescales sigma" in effect.
inline std::pair<HermitianMatrix, HermitianMatrix> guarded_hermitian_pair(
    int n, double sigma, RandomStream& rng, double t_lo, double t_hi, double r_max,
    double kappa_max = 1e8) {
  const HermitianMatrix h = random_hermitian(n, sigma, rng);
  const HermitianMatrix k = random_hermitian(n, sigma, rng);
  return guard_rescale(h, k, t_lo, t_hi, r_max, kappa_max);
}

}  // namespace matmean

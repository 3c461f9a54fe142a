#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "matmean/means.hpp"
#include "matmean/rng.hpp"

using namespace matmean;

namespace {

double rel_frob(const ComplexMatrix& got, const ComplexMatrix& want) {
  return (got - want).frobenius_norm() / std::max(1.0, want.frobenius_norm());
}

PositiveDefiniteMatrix random_pd(int n, double sigma, RandomStream& rng) {
  return mexp(random_hermitian(n, sigma, rng));
}

ComplexMatrix random_invertible(int n, RandomStream& rng) {
  while (true) {
    ComplexMatrix a(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = Complex(rng.gaussian(), rng.gaussian());
    const std::vector<double> s = singular_values(a);
    if (s.back() > 1e-3 * s.front()) return a;
  }
}

}  // namespace

TEST_CASE("geometric mean endpoints and scalars") {
  RandomStream rng(11);
  const PositiveDefiniteMatrix x = random_pd(3, 0.8, rng);
  const PositiveDefiniteMatrix y = random_pd(3, 0.8, rng);

  CHECK(rel_frob(geometric_mean(x, y, 0.0).matrix(), x.matrix()) < 1e-12);
  CHECK(rel_frob(geometric_mean(x, y, 1.0).matrix(), y.matrix()) < 1e-12);

  // 1x1: a^{1-t} b^t
  const PositiveDefiniteMatrix a = PositiveDefiniteMatrix::diagonal({4.0});
  const PositiveDefiniteMatrix b = PositiveDefiniteMatrix::diagonal({9.0});
  CHECK(geometric_mean(a, b, 0.5).matrix()(0, 0).real() == doctest::Approx(6.0).epsilon(1e-13));

  // commuting diagonals at t = 2: a^{-1} b^2
  const PositiveDefiniteMatrix dx = PositiveDefiniteMatrix::diagonal({1.0, 4.0});
  const PositiveDefiniteMatrix dy = PositiveDefiniteMatrix::diagonal({9.0, 1.0});
  const ComplexMatrix m = geometric_mean(dx, dy, 2.0).matrix();
  CHECK(m(0, 0).real() == doctest::Approx(81.0).epsilon(1e-12));
  CHECK(m(1, 1).real() == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(std::abs(m(0, 1)) < 1e-12);
}

TEST_CASE("positive definiteness is enforced") {
  CHECK_THROWS_AS(PositiveDefiniteMatrix{HermitianMatrix::diagonal({1.0, -0.5})},
                  std::domain_error);
  CHECK_THROWS_AS(PositiveDefiniteMatrix{HermitianMatrix::diagonal({1.0, 0.0})},
                  std::domain_error);
}

TEST_CASE("switch relation") {
  RandomStream rng(13);
  for (int trial = 0; trial < 5; ++trial) {
    auto [h, k] = guarded_hermitian_pair(4, 1.0, rng, -3.0, 3.0, 1.0);
    const PositiveDefiniteMatrix x = mexp(h);
    const PositiveDefiniteMatrix y = mexp(k);
    for (double t = -3.0; t <= 3.0001; t += 0.5) {
      const ComplexMatrix lhs = geometric_mean(x, y, 1.0 - t).matrix();
      const ComplexMatrix rhs = geometric_mean(y, x, t).matrix();
      CHECK(rel_frob(lhs, rhs) < 1e-9);
    }
  }
}

TEST_CASE("geodesic composition") {
  RandomStream rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    // composed weights (1-t)t0 + t t1 reach (1+|t|) max|t0,t1| = 3.75
    auto [h, k] = guarded_hermitian_pair(3, 0.8, rng, -3.75, 3.75, 1.0);
    const PositiveDefiniteMatrix x = mexp(h);
    const PositiveDefiniteMatrix y = mexp(k);
    RandomStream params(100 + static_cast<uint64_t>(trial));
    for (int rep = 0; rep < 4; ++rep) {
      const double t = 3.0 * params.uniform01() - 1.5;
      const double t0 = 3.0 * params.uniform01() - 1.5;
      const double t1 = 3.0 * params.uniform01() - 1.5;
      const ComplexMatrix lhs = geometric_mean(x, y, (1.0 - t) * t0 + t * t1).matrix();
      const ComplexMatrix rhs =
          geometric_mean(geometric_mean(x, y, t0), geometric_mean(x, y, t1), t).matrix();
      CHECK(rel_frob(lhs, rhs) < 1e-8);
    }
  }
}

TEST_CASE("riemannian distance") {
  RandomStream rng(19);
  auto [hg, kg] = guarded_hermitian_pair(4, 0.9, rng, -2.0, 2.0, 1.0);
  const PositiveDefiniteMatrix x = mexp(hg);
  const PositiveDefiniteMatrix y = mexp(kg);

  SUBCASE("coincident points") { CHECK(riemannian_distance(x, x) == doctest::Approx(0.0)); }

  SUBCASE("scalars: |log b - log a|") {
    const PositiveDefiniteMatrix a = PositiveDefiniteMatrix::diagonal({1.0});
    const PositiveDefiniteMatrix b =
        PositiveDefiniteMatrix::diagonal({std::exp(2.0)});
    CHECK(riemannian_distance(a, b) == doctest::Approx(2.0).epsilon(1e-13));
  }

  SUBCASE("symmetry and separation") {
    CHECK(riemannian_distance(x, y) == doctest::Approx(riemannian_distance(y, x)).epsilon(1e-12));
    CHECK(riemannian_distance(x, y) > 1e-3);
  }

  SUBCASE("congruence invariance") {
    for (int rep = 0; rep < 5; ++rep) {
      const ComplexMatrix a = random_invertible(4, rng);
      const double before = riemannian_distance(x, y);
      const double after = riemannian_distance(congruence(a, x), congruence(a, y));
      CHECK(after == doctest::Approx(before).epsilon(1e-9));
    }
  }

  SUBCASE("constant speed along the geodesic") {
    for (double t : {-2.0, -1.3, -0.5, 0.25, 0.75, 1.5, 2.0}) {
      const double d = riemannian_distance(x, geometric_mean(x, y, t));
      CHECK(d == doctest::Approx(std::abs(t) * riemannian_distance(x, y)).epsilon(1e-8));
    }
  }
}

TEST_CASE("congruence") {
  RandomStream rng(23);
  const PositiveDefiniteMatrix x = random_pd(3, 0.7, rng);

  SUBCASE("identity congruence") {
    CHECK(rel_frob(congruence(ComplexMatrix::identity(3), x).matrix(), x.matrix()) < 1e-14);
  }
  SUBCASE("unitary congruence of the identity") {
    const ComplexMatrix u = random_unitary(3, rng);
    CHECK(rel_frob(congruence(u, PositiveDefiniteMatrix::identity(3)).matrix(),
                   ComplexMatrix::identity(3)) < 1e-10);
  }
  SUBCASE("positivity is preserved for random invertible A") {
    for (int rep = 0; rep < 10; ++rep) {
      const ComplexMatrix a = random_invertible(3, rng);
      const PositiveDefiniteMatrix c = congruence(a, x);  // constructor checks positivity
      CHECK(c.decomposition().min_eigenvalue() > 0.0);
    }
  }
  SUBCASE("near-singular congruence is refused") {
    ComplexMatrix a = ComplexMatrix::diagonal({1.0, 1e-12, 1.0});
    CHECK_THROWS_AS(congruence(a, x), std::domain_error);
  }
}

TEST_CASE("congruence invariance of the mean") {
  RandomStream rng(29);
  const PositiveDefiniteMatrix x = random_pd(3, 0.8, rng);
  const PositiveDefiniteMatrix y = random_pd(3, 0.8, rng);
  for (int rep = 0; rep < 5; ++rep) {
    const ComplexMatrix a = random_invertible(3, rng);
    for (double t : {-1.0, 0.3, 1.7}) {
      const ComplexMatrix lhs = (a.adjoint() * geometric_mean(x, y, t).matrix()) * a;
      const ComplexMatrix rhs = geometric_mean(congruence(a, x), congruence(a, y), t).matrix();
      CHECK(rel_frob(lhs, rhs) < 1e-8);
    }
  }
}

TEST_CASE("determinant identity") {
  RandomStream rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    auto [h, k] = guarded_hermitian_pair(4, 1.0, rng, -3.0, 3.0, 1.0);
    const PositiveDefiniteMatrix x = mexp(h);
    const PositiveDefiniteMatrix y = mexp(k);
    for (double t : {-2.5, -1.0, 0.4, 1.0, 2.2}) {
      const double got = geometric_mean(x, y, t).log_det();
      const double want = (1.0 - t) * x.log_det() + t * y.log_det();
      CHECK(std::abs(got - want) <= 1e-9 * x.dim());
    }
  }
}

TEST_CASE("commuting reduction to elementwise powers") {
  RandomStream rng(37);
  const HermitianMatrix h0 = random_hermitian(4, 0.8, rng);
  const HermitianMatrix k0 = spectral_function(h0, [](double v) { return 0.3 * v * v - v; });
  auto [h, k] = guard_rescale(h0, k0, -1.5, 2.0, 1.0);
  REQUIRE(commutator_norm(mlog(mexp(h)), mlog(mexp(k))) < 1e-10);
  const PositiveDefiniteMatrix x = mexp(h);
  const PositiveDefiniteMatrix y = mexp(k);
  for (double t : {-1.5, 0.25, 2.0}) {
    const ComplexMatrix lhs = geometric_mean(x, y, t).matrix();
    const ComplexMatrix rhs = mpow(x, 1.0 - t).matrix() * mpow(y, t).matrix();
    CHECK(rel_frob(lhs, rhs) < 1e-9);
  }
}

TEST_CASE("extreme weights overflow is a range error") {
  const PositiveDefiniteMatrix x = PositiveDefiniteMatrix::identity(2);
  const PositiveDefiniteMatrix y =
      PositiveDefiniteMatrix::diagonal({std::exp(90.0), std::exp(-90.0)});
  CHECK_THROWS_AS(geometric_mean(x, y, 9.0), std::range_error);
}

TEST_CASE("dimension mismatch") {
  const PositiveDefiniteMatrix a = PositiveDefiniteMatrix::identity(2);
  const PositiveDefiniteMatrix b = PositiveDefiniteMatrix::identity(3);
  CHECK_THROWS_AS(geometric_mean(a, b, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(riemannian_distance(a, b), std::invalid_argument);
}

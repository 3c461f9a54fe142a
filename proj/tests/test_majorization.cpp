#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "matmean/compound.hpp"
#include "matmean/majorization.hpp"
#include "matmean/norms.hpp"
#include "matmean/rng.hpp"
#include "matmean/spectral.hpp"

using namespace matmean;

namespace {

double rel_frob(const ComplexMatrix& got, const ComplexMatrix& want) {
  return (got - want).frobenius_norm() / std::max(1.0, want.frobenius_norm());
}

PositiveDefiniteMatrix random_pd(int n, double sigma, RandomStream& rng) {
  return mexp(random_hermitian(n, sigma, rng));
}

ComplexMatrix random_complex(int n, RandomStream& rng) {
  ComplexMatrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = Complex(rng.gaussian(), rng.gaussian());
  return a;
}

}  // namespace

TEST_CASE("unitarily invariant norm fixtures") {
  CHECK(ui_norm(ComplexMatrix::identity(3), NormSelector::trace()) ==
        doctest::Approx(3.0).epsilon(1e-12));
  CHECK(ui_norm(ComplexMatrix::diagonal({3.0, -2.0}), NormSelector::ky_fan(1)) ==
        doctest::Approx(3.0).epsilon(1e-12));
  // 3-4-5
  CHECK(ui_norm(ComplexMatrix::diagonal({3.0, 4.0}), NormSelector::schatten(2.0)) ==
        doctest::Approx(5.0).epsilon(1e-12));
  CHECK(ui_norm(ComplexMatrix::diagonal({3.0, 4.0}), NormSelector::frobenius()) ==
        doctest::Approx(5.0).epsilon(1e-12));
  CHECK(ui_norm(ComplexMatrix::diagonal({3.0, -7.0}), NormSelector::operator_norm()) ==
        doctest::Approx(7.0).epsilon(1e-12));
}

TEST_CASE("norm selector validation and the strictly-increasing flag") {
  CHECK_THROWS_AS(ui_norm(ComplexMatrix::identity(2), NormSelector::ky_fan(3)),
                  std::invalid_argument);
  CHECK_THROWS_AS(ui_norm(ComplexMatrix::identity(2), NormSelector::ky_fan(0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(ui_norm(ComplexMatrix::identity(2), NormSelector::schatten(0.5)),
                  std::invalid_argument);
  CHECK_THROWS_AS(ui_norm(ComplexMatrix::identity(2),
                          NormSelector::schatten(std::numeric_limits<double>::infinity())),
                  std::invalid_argument);

  CHECK(NormSelector::trace().strictly_increasing(4));
  CHECK(NormSelector::frobenius().strictly_increasing(4));
  CHECK(NormSelector::schatten(3.0).strictly_increasing(4));
  CHECK(NormSelector::ky_fan(4).strictly_increasing(4));
  CHECK_FALSE(NormSelector::ky_fan(2).strictly_increasing(4));
  CHECK_FALSE(NormSelector::operator_norm().strictly_increasing(4));
}

TEST_CASE("norm is invariant under unitary factors") {
  RandomStream rng(41);
  const ComplexMatrix a = random_complex(4, rng);
  const ComplexMatrix u = random_unitary(4, rng);
  const ComplexMatrix v = random_unitary(4, rng);
  for (const NormSelector& sel : default_norms(4)) {
    const double before = ui_norm(a, sel);
    const double after = ui_norm(u * a * v, sel);
    CHECK(std::abs(after - before) <= 1e-10 * std::max(1.0, before));
  }
}

TEST_CASE("log majorization compare") {
  SUBCASE("reflexive: relation log, margin zero") {
    const std::vector<double> a = {3.0, 1.5, 0.5};
    const MajorizationVerdict v = log_majorization_compare(a, a);
    CHECK(v.relation == MajorizationRelation::log);
    CHECK(v.worst_margin == doctest::Approx(0.0));
  }
  SUBCASE("hand check: (2,2) <_log (4,1)") {
    const MajorizationVerdict v =
        log_majorization_compare(std::vector<double>{2.0, 2.0}, std::vector<double>{4.0, 1.0});
    CHECK(v.relation == MajorizationRelation::log);
    CHECK(v.prefix_margins[0] == doctest::Approx(std::log(2.0)));
    CHECK(v.total_margin == doctest::Approx(0.0));
  }
  SUBCASE("hand check: (3,1) vs (2,2) fails at the first prefix") {
    const MajorizationVerdict v =
        log_majorization_compare(std::vector<double>{3.0, 1.0}, std::vector<double>{2.0, 2.0});
    CHECK(v.relation == MajorizationRelation::none);
    CHECK(v.worst_margin == doctest::Approx(std::log(2.0 / 3.0)));
  }
  SUBCASE("scaling breaks product equality: weak only") {
    RandomStream rng(43);
    const PositiveDefiniteMatrix a = random_pd(3, 0.6, rng);
    const MajorizationVerdict v = matrix_log_majorization(a.matrix(), 2.0 * a.matrix());
    CHECK(v.relation == MajorizationRelation::weak_log);
  }
  SUBCASE("zeros: left zeros pass, right zeros cannot") {
    const MajorizationVerdict pass =
        log_majorization_compare(std::vector<double>{2.0, 0.0}, std::vector<double>{3.0, 1.0});
    CHECK(pass.relation == MajorizationRelation::weak_log);
    const MajorizationVerdict fail =
        log_majorization_compare(std::vector<double>{2.0, 1.0}, std::vector<double>{3.0, 0.0});
    CHECK(fail.relation == MajorizationRelation::none);
    const MajorizationVerdict matched =
        log_majorization_compare(std::vector<double>{2.0, 0.0}, std::vector<double>{2.0, 0.0});
    CHECK(matched.relation == MajorizationRelation::log);
  }
  SUBCASE("input validation") {
    CHECK_THROWS_AS(
        log_majorization_compare(std::vector<double>{1.0}, std::vector<double>{1.0, 2.0}),
        std::invalid_argument);
    CHECK_THROWS_AS(
        log_majorization_compare(std::vector<double>{1.0, 2.0}, std::vector<double>{2.0, 1.0}),
        std::invalid_argument);
    CHECK_THROWS_AS(
        log_majorization_compare(std::vector<double>{1.0, -0.5}, std::vector<double>{2.0, 1.0}),
        std::domain_error);
  }
}

TEST_CASE("matrix log majorization and the Araki r=2 instance") {
  RandomStream rng(47);
  SUBCASE("reflexive") {
    const PositiveDefiniteMatrix a = random_pd(3, 0.7, rng);
    CHECK(matrix_log_majorization(a.matrix(), a.matrix()).relation == MajorizationRelation::log);
  }
  SUBCASE("(A^{1/2} B A^{1/2})^2 <_log A B^2 A, computed directly") {
    for (int trial = 0; trial < 10; ++trial) {
      const PositiveDefiniteMatrix a = random_pd(3, 0.4, rng);
      const PositiveDefiniteMatrix b = random_pd(3, 0.4, rng);
      const ComplexMatrix a_half = mpow(a, 0.5).matrix();
      const ComplexMatrix inner = a_half * b.matrix() * a_half;
      const ComplexMatrix lhs = inner * inner;
      const ComplexMatrix rhs = a.matrix() * (b.matrix() * b.matrix()) * a.matrix();
      const MajorizationVerdict v = matrix_log_majorization(lhs, rhs);
      CHECK(v.relation == MajorizationRelation::log);
      CHECK(v.worst_margin >= -3.0 * 1e-9);
    }
  }
}

TEST_CASE("fan dominance: weak log majorization bounds every UI norm") {
  RandomStream rng(53);
  for (int trial = 0; trial < 10; ++trial) {
    const PositiveDefiniteMatrix a = random_pd(4, 0.5, rng);
    const PositiveDefiniteMatrix b = random_pd(4, 0.5, rng);
    const ComplexMatrix a_half = mpow(a, 0.5).matrix();
    const ComplexMatrix lhs = a_half * b.matrix() * a_half;  // (A^{1/2} B A^{1/2})
    const ComplexMatrix big = a.matrix() * b.matrix();        // s-dominates by Araki
    const MajorizationVerdict v = matrix_log_majorization(lhs, big);
    REQUIRE(v.relation != MajorizationRelation::none);
    std::vector<NormSelector> sels = default_norms(4);
    sels.push_back(NormSelector::schatten(3.0));
    for (const NormSelector& sel : sels)
      CHECK(ui_norm(lhs, sel) <= ui_norm(big, sel) * (1.0 + 1e-9));
  }
}

TEST_CASE("log majorization survives fractional powers") {
  RandomStream rng(59);
  for (int trial = 0; trial < 5; ++trial) {
    // pairs already known to satisfy lhs <_log rhs (Araki r = 2)
    const PositiveDefiniteMatrix a = random_pd(3, 0.4, rng);
    const PositiveDefiniteMatrix b = random_pd(3, 0.4, rng);
    const ComplexMatrix a_half = mpow(a, 0.5).matrix();
    const PositiveDefiniteMatrix inner{HermitianMatrix(a_half * b.matrix() * a_half)};
    const PositiveDefiniteMatrix lhs = mpow(inner, 2.0);
    const PositiveDefiniteMatrix rhs{
        HermitianMatrix(a.matrix() * (b.matrix() * b.matrix()) * a.matrix())};
    REQUIRE(matrix_log_majorization(lhs.matrix(), rhs.matrix()).relation ==
            MajorizationRelation::log);
    for (double r : {1.0, 2.0, 4.0}) {
      const MajorizationVerdict v =
          matrix_log_majorization(mpow(lhs, 1.0 / r).matrix(), mpow(rhs, 1.0 / r).matrix());
      CHECK(v.relation == MajorizationRelation::log);
    }
  }
}

TEST_CASE("log majorization is antisymmetric up to tolerance") {
  RandomStream rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> a(4), b(4);
    for (int i = 0; i < 4; ++i) a[static_cast<size_t>(i)] = std::exp(rng.gaussian());
    b = a;
    if (trial % 2) b[3] *= 1.0 + 1e-13;  // within tolerance
    std::sort(a.rbegin(), a.rend());
    std::sort(b.rbegin(), b.rend());
    const MajorizationVerdict ab = log_majorization_compare(a, b);
    const MajorizationVerdict ba = log_majorization_compare(b, a);
    if (ab.relation != MajorizationRelation::none && ba.relation != MajorizationRelation::none) {
      for (size_t i = 0; i < a.size(); ++i)
        CHECK(std::abs(std::log(a[i]) - std::log(b[i])) <= 4 * 1e-9);
    }
  }
}

TEST_CASE("signed additive majorization (unused by the inequality checks)") {
  const std::vector<double> a = {2.0, 0.0, -2.0};
  const std::vector<double> b = {3.0, 1.0, -3.0};
  CHECK(majorization_compare(a, b).relation == AdditiveRelation::weak);
  const std::vector<double> c = {3.0, 1.0, -3.0};
  CHECK(majorization_compare(b, c).relation == AdditiveRelation::majorized);
  const std::vector<double> d = {1.0, 1.0, -2.0};
  CHECK(majorization_compare(b, d).relation == AdditiveRelation::none);
  CHECK_THROWS_AS(majorization_compare(std::vector<double>{1.0, 2.0}, a),
                  std::invalid_argument);
}

TEST_CASE("compound matrices") {
  SUBCASE("diagonal: products of pairs in lexicographic order") {
    const ComplexMatrix c = compound_matrix(ComplexMatrix::diagonal({3.0, 2.0, 1.0}), 2);
    REQUIRE(c.dim() == 3);
    CHECK(c(0, 0) == Complex(6.0));  // {0,1}
    CHECK(c(1, 1) == Complex(3.0));  // {0,2}
    CHECK(c(2, 2) == Complex(2.0));  // {1,2}
    CHECK(std::abs(c(0, 1)) == 0.0);
  }
  SUBCASE("identity maps to identity") {
    for (int k = 1; k <= 4; ++k) {
      const ComplexMatrix c = compound_matrix(ComplexMatrix::identity(4), k);
      CHECK(rel_frob(c, ComplexMatrix::identity(c.dim())) == 0.0);
    }
  }
  SUBCASE("k = n gives the determinant") {
    RandomStream rng(67);
    const ComplexMatrix a = random_complex(3, rng);
    const ComplexMatrix c = compound_matrix(a, 3);
    REQUIRE(c.dim() == 1);
    // compare against the product of eigenvalues of A*A: |det|^2
    const double det2 = std::norm(c(0, 0));
    double prod = 1.0;
    for (double s : singular_values(a)) prod *= s * s;
    CHECK(det2 == doctest::Approx(prod).epsilon(1e-9));
  }
  SUBCASE("multiplicative and adjoint-compatible") {
    RandomStream rng(71);
    for (int n : {3, 4, 5}) {
      const ComplexMatrix a = random_complex(n, rng);
      const ComplexMatrix b = random_complex(n, rng);
      for (int k = 1; k <= n; ++k) {
        const ComplexMatrix lhs = compound_matrix(a * b, k);
        const ComplexMatrix rhs = compound_matrix(a, k) * compound_matrix(b, k);
        CHECK(rel_frob(lhs, rhs) < 1e-9);
        CHECK(rel_frob(compound_matrix(a.adjoint(), k), compound_matrix(a, k).adjoint()) < 1e-12);
      }
    }
  }
  SUBCASE("top singular value is the product of the top k") {
    RandomStream rng(73);
    for (int n : {2, 4, 6}) {
      const ComplexMatrix a = random_complex(n, rng);
      const std::vector<double> s = singular_values(a);
      for (int k = 1; k <= n; ++k) {
        double want = 1.0;
        for (int i = 0; i < k; ++i) want *= s[static_cast<size_t>(i)];
        const double got = singular_values(compound_matrix(a, k)).front();
        CHECK(std::abs(got - want) <= 1e-9 * std::max(1.0, want));
      }
    }
  }
  SUBCASE("k out of range") {
    CHECK_THROWS_AS(compound_matrix(ComplexMatrix::identity(3), 0), std::invalid_argument);
    CHECK_THROWS_AS(compound_matrix(ComplexMatrix::identity(3), 4), std::invalid_argument);
  }
}

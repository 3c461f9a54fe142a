#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "matmean/matrix_io.hpp"
#include "matmean/rng.hpp"
#include "matmean/sweep.hpp"

using namespace matmean;

namespace {

bool bit_equal(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (!a.same_dim(b)) return false;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      if (a(i, j).real() != b(i, j).real() || a(i, j).imag() != b(i, j).imag()) return false;
  return true;
}

size_t count_occurrences(const std::string& text, const std::string& needle) {
  size_t count = 0, pos = 0;
  while ((pos = text.find(needle, pos)) != std::string::npos) {
    ++count;
    pos += needle.size();
  }
  return count;
}

}  // namespace

TEST_CASE("matrix file writer/parser round trip is bit exact") {
  RandomStream rng(111);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + static_cast<int>(trial % 5);
    const HermitianMatrix h = random_hermitian(n, 1.3, rng);
    const HermitianMatrix k = random_hermitian(n, 0.7, rng);
    const std::string text = write_matrix_file(h, k, MatrixKind::hermitian);
    const MatrixFile parsed = parse_matrix_file(text);
    CHECK(parsed.kind == MatrixKind::hermitian);
    CHECK(bit_equal(parsed.h.matrix(), h.matrix()));
    CHECK(bit_equal(parsed.k.matrix(), k.matrix()));
    // and the writer reproduces itself from the parse
    CHECK(write_matrix_file(parsed.h, parsed.k, parsed.kind) == text);
  }
}

TEST_CASE("documented Pauli sample parses") {
  const std::string text =
      "n 2 hermitian\n"
      "1+0i 0+0i\n"
      "0+0i -1+0i\n"
      "\n"
      "0+0i 1+0i\n"
      "1+0i 0+0i\n";
  const MatrixFile f = parse_matrix_file(text);
  CHECK(f.h(0, 0) == Complex(1.0));
  CHECK(f.h(1, 1) == Complex(-1.0));
  CHECK(f.k(0, 1) == Complex(1.0));
  CHECK(f.k(1, 0) == Complex(1.0));
}

TEST_CASE("parse errors carry line and column") {
  SUBCASE("empty file") {
    CHECK_THROWS_AS(parse_matrix_file(""), MatrixParseError);
    CHECK_THROWS_AS(parse_matrix_file("\n\n"), MatrixParseError);
  }
  SUBCASE("bad header") {
    CHECK_THROWS_AS(parse_matrix_file("m 2 hermitian\n"), MatrixParseError);
    CHECK_THROWS_AS(parse_matrix_file("n two hermitian\n"), MatrixParseError);
    CHECK_THROWS_AS(parse_matrix_file("n 2 symmetric\n"), MatrixParseError);
  }
  SUBCASE("row with the wrong number of entries cites the row") {
    const std::string text =
        "n 2 hermitian\n"
        "1+0i 0+0i\n"
        "0+0i -1+0i 3+0i\n"
        "\n"
        "0+0i 1+0i\n"
        "1+0i 0+0i\n";
    try {
      parse_matrix_file(text);
      FAIL("expected MatrixParseError");
    } catch (const MatrixParseError& e) {
      CHECK(e.line() == 3);
      CHECK(std::string(e.what()).find("row 2") != std::string::npos);
      CHECK(std::string(e.what()).find("expected 2") != std::string::npos);
    }
  }
  SUBCASE("non-numeric token") {
    const std::string text =
        "n 1 hermitian\n"
        "foo\n"
        "\n"
        "0+0i\n";
    CHECK_THROWS_AS(parse_matrix_file(text), MatrixParseError);
  }
  SUBCASE("missing blank separator") {
    const std::string text =
        "n 1 hermitian\n"
        "1+0i\n"
        "2+0i\n";
    CHECK_THROWS_AS(parse_matrix_file(text), MatrixParseError);
  }
  SUBCASE("declared positive but indefinite names the eigenvalue") {
    const std::string text =
        "n 2 positive\n"
        "1+0i 0+0i\n"
        "0+0i -1+0i\n"
        "\n"
        "1+0i 0+0i\n"
        "0+0i 1+0i\n";
    try {
      parse_matrix_file(text);
      FAIL("expected MatrixParseError");
    } catch (const MatrixParseError& e) {
      CHECK(std::string(e.what()).find("eigenvalue") != std::string::npos);
    }
  }
  SUBCASE("non-hermitian content names the residual") {
    const std::string text =
        "n 2 hermitian\n"
        "1+0i 5+0i\n"
        "0+0i 1+0i\n"
        "\n"
        "1+0i 0+0i\n"
        "0+0i 1+0i\n";
    try {
      parse_matrix_file(text);
      FAIL("expected MatrixParseError");
    } catch (const MatrixParseError& e) {
      CHECK(std::string(e.what()).find("residual") != std::string::npos);
    }
  }
}

TEST_CASE("complex token grammar") {
  CHECK(detail::parse_complex_token("1.5-2e-3i", 1, 1) == Complex(1.5, -2e-3));
  CHECK(detail::parse_complex_token("-0.25+0i", 1, 1) == Complex(-0.25, 0.0));
  CHECK(detail::parse_complex_token("1e+10+1e-10i", 1, 1) == Complex(1e10, 1e-10));
  CHECK_THROWS_AS(detail::parse_complex_token("1.5", 1, 1), MatrixParseError);
  CHECK_THROWS_AS(detail::parse_complex_token("ai+bi", 1, 1), MatrixParseError);
}

TEST_CASE("sweep rows and CSV schema") {
  RandomStream rng(113);
  auto [h, k] = guarded_hermitian_pair(4, 1.0, rng, -3.0, 3.0, 1.0);
  const TGrid grid{-3.0, 3.0, 0.05};
  const std::vector<SweepRow> rows = compute_sweep(h, k, grid);
  REQUIRE(rows.size() == 121);

  SUBCASE("schema and determinism") {
    const std::string csv = sweep_to_csv(rows);
    CHECK(csv.rfind("t,trace_geom_mean,trace_exp_sum,trace_product,regime\n", 0) == 0);
    CHECK(csv == sweep_to_csv(compute_sweep(h, k, grid)));
  }

  SUBCASE("curves meet at the endpoints") {
    for (const SweepRow& r : rows) {
      if (r.t == 0.0 || r.t == 1.0) {
        const double scale = std::max(1.0, r.trace_exp_sum);
        CHECK(std::abs(r.trace_geom_mean - r.trace_exp_sum) <= 1e-9 * scale);
        CHECK(std::abs(r.trace_product - r.trace_exp_sum) <= 1e-9 * scale);
      }
      CHECK(r.ordering_ok);
      CHECK_FALSE(r.overflow);
    }
  }

  SUBCASE("regimes are labeled by containment order") {
    for (const SweepRow& r : rows) {
      if (r.t >= 0.0 && r.t <= 1.0) CHECK(r.regime == Regime::interior);
      else if (r.t >= -1.0 && r.t <= 2.0) CHECK(r.regime == Regime::near_exterior);
      else CHECK(r.regime == Regime::far_exterior);
    }
  }
}

TEST_CASE("commuting input gives three coincident curves") {
  const HermitianMatrix h = HermitianMatrix::diagonal({0.8, -0.4, 0.1});
  const HermitianMatrix k = HermitianMatrix::diagonal({-0.3, 0.6, 0.9});
  const std::vector<SweepRow> rows = compute_sweep(h, k, TGrid{-2.0, 3.0, 0.25});
  for (const SweepRow& r : rows) {
    const double scale = std::max(1.0, r.trace_exp_sum);
    CHECK(std::abs(r.trace_geom_mean - r.trace_exp_sum) <= 1e-9 * scale);
    CHECK(std::abs(r.trace_product - r.trace_exp_sum) <= 1e-9 * scale);
  }
}

TEST_CASE("positive shift makes the pair positive definite") {
  RandomStream rng(115);
  const HermitianMatrix h = random_hermitian(4, 1.0, rng);
  const HermitianMatrix shifted = positive_shift(h);
  CHECK(hermitian_eig(shifted).min_eigenvalue() >= 1.0 - 1e-9);
}

TEST_CASE("svg output") {
  RandomStream rng(117);
  auto [h, k] = guarded_hermitian_pair(3, 0.8, rng, -2.0, 2.0, 1.0);
  const std::vector<SweepRow> rows = compute_sweep(h, k, TGrid{-2.0, 2.0, 0.1});
  const std::string svg = sweep_to_svg(rows);
  CHECK(svg.rfind("<?xml version=\"1.0\"", 0) == 0);
  CHECK(count_occurrences(svg, "<polyline") == 3);
  CHECK(count_occurrences(svg, "</svg>") == 1);
  CHECK(svg.find("stroke=\"red\"") != std::string::npos);
  CHECK(svg.find("stroke=\"green\"") != std::string::npos);
  CHECK(svg.find("stroke=\"blue\"") != std::string::npos);
  CHECK(svg.find(">t</text>") != std::string::npos);
  CHECK(svg.find(">trace</text>") != std::string::npos);
  // polylines carry one point per finite row
  CHECK(count_occurrences(svg, ",") >= 3 * rows.size());
}

TEST_CASE("overflow rows are marked and excluded from the plot") {
  const HermitianMatrix h = HermitianMatrix::diagonal({0.0, 0.0});
  const HermitianMatrix k = HermitianMatrix::diagonal({90.0, -90.0});
  const std::vector<SweepRow> rows = compute_sweep(h, k, TGrid{0.0, 9.0, 3.0});
  bool saw_overflow = false;
  for (const SweepRow& r : rows) saw_overflow = saw_overflow || r.overflow;
  CHECK(saw_overflow);
  const std::string csv = sweep_to_csv(rows);
  CHECK(csv.find("overflow") != std::string::npos);
  const std::string svg = sweep_to_svg(rows);  // still three valid polylines
  CHECK(count_occurrences(svg, "<polyline") == 3);
}

TEST_CASE("format_double round trips") {
  RandomStream rng(119);
  for (int i = 0; i < 200; ++i) {
    const double v = std::exp(6.0 * rng.gaussian());
    double back = 0.0;
    REQUIRE(parse_double(format_double(v), back));
    CHECK(back == v);
  }
}

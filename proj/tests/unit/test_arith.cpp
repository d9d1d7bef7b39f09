#include <random>

#include "doctest.h"
#include "modsym/arith.hpp"
#include "modsym/lll.hpp"
#include "modsym/polynomial.hpp"
#include "oracles.hpp"

using namespace modsym;

TEST_CASE("Bareiss determinant agrees with cofactor expansion") {
  std::mt19937_64 rng(11);
  for (std::size_t n = 1; n <= 6; ++n)
    for (int trial = 0; trial < 30; ++trial) {
      IntMatrix m = oracle::random_matrix(rng, n, n, -20, 20);
      if (trial % 7 == 0 && n > 1)
        for (std::size_t r = 0; r < n; ++r) m(r, n - 1) = 2 * m(r, 0) - m(r, 1 % n);
      CHECK(det(m) == oracle::cofactor_det(m));
      CHECK(det(to_rational(m)) == BigRat(oracle::cofactor_det(m)));
    }
}

TEST_CASE("adjugate satisfies m * adj(m) = det(m) I") {
  std::mt19937_64 rng(12);
  for (std::size_t n = 1; n <= 5; ++n)
    for (int trial = 0; trial < 20; ++trial) {
      IntMatrix m = oracle::random_matrix(rng, n, n, -9, 9);
      IntMatrix p = m * adjugate(m);
      IntMatrix expect = IntMatrix::identity(n);
      BigInt d = det(m);
      for (std::size_t i = 0; i < n; ++i) expect(i, i) = d;
      CHECK(p == expect);
    }
}

TEST_CASE("rational inverse") {
  IntMatrix m = from_columns(std::vector<IntVector>{{2, 1}, {1, 3}});
  RatMatrix inv = inverse(to_rational(m));
  CHECK(to_rational(m) * inv == RatMatrix::identity(2));
  IntMatrix s = from_columns(std::vector<IntVector>{{1, 2}, {2, 4}});
  CHECK_THROWS_AS(inverse(to_rational(s)), RankError);
}

TEST_CASE("primitive normalization") {
  Primitive p = make_primitive(IntVector{0, -4, 6});
  CHECK(p.vector == IntVector{0, 2, -3});
  CHECK(p.orientation == -1);
  std::vector<BigRat> q{BigRat(1, 2), BigRat(-3, 4)};
  Primitive r = make_primitive(q);
  CHECK(r.vector == IntVector{2, -3});
  CHECK(r.orientation == 1);
  CHECK(is_primitive(IntVector{3, 5}));
  CHECK_FALSE(is_primitive(IntVector{-3, 5}));
  CHECK_FALSE(is_primitive(IntVector{2, 4}));
  CHECK_THROWS_AS(make_primitive(IntVector{0, 0}), DegenerateInputError);
}

TEST_CASE("integer kernel is a saturated basis") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t rows = 1 + trial % 3, cols = rows + 1 + trial % 2;
    IntMatrix a = oracle::random_matrix(rng, rows, cols, -6, 6);
    IntMatrix k = integer_kernel(a);
    CHECK(k.cols() == cols - rank(a));
    CHECK((a * k).is_zero());
    if (k.cols() == 0) continue;
    // Saturation: gcd of maximal minors of K equals 1.
    BigInt g = 0;
    std::vector<std::size_t> pick(k.cols());
    for (std::size_t i = 0; i < pick.size(); ++i) pick[i] = i;
    while (true) {
      IntMatrix sub(k.cols(), k.cols());
      for (std::size_t i = 0; i < pick.size(); ++i)
        for (std::size_t c = 0; c < k.cols(); ++c) sub(i, c) = k(pick[i], c);
      g = oracle::gcd(g, oracle::cofactor_det(sub));
      std::size_t i = pick.size();
      while (i-- > 0 && pick[i] == cols - pick.size() + i) {}
      if (i == static_cast<std::size_t>(-1)) break;
      ++pick[i];
      for (std::size_t j = i + 1; j < pick.size(); ++j) pick[j] = pick[j - 1] + 1;
    }
    CHECK(g == 1);
  }
}

TEST_CASE("solve_in_span") {
  IntMatrix b = from_columns(std::vector<IntVector>{{1, 0, 1}, {0, 2, 2}});
  auto x = solve_in_span(b, IntVector{3, 4, 7});
  CHECK(x[0] == 3);
  CHECK(x[1] == 2);
  CHECK_THROWS_AS(solve_in_span(b, IntVector{1, 0, 0}), RankError);
}

TEST_CASE("LLL output is reduced, unimodularly equivalent and short") {
  std::mt19937_64 rng(14);
  for (std::size_t n = 2; n <= 4; ++n)
    for (int trial = 0; trial < 25; ++trial) {
      IntMatrix b = oracle::random_matrix(rng, n, n, -30, 30);
      if (det(b) == 0) continue;
      LllResult r = lll_reduce(b);
      CHECK(is_lll_reduced(r.basis));
      CHECK(b * r.transform == r.basis);
      CHECK(abs(det(r.transform)) == 1);
      if (n > 3) continue;
      // Brute-force lattice minimum over a coefficient box that contains the
      // shortest vector for these sizes; LLL guarantees |b1|^2 <= 2^(n-1) lambda1^2.
      BigInt best = -1;
      const long box = 12;
      std::vector<long> c(n, -box);
      while (true) {
        bool nonzero = false;
        IntVector v(n);
        for (std::size_t j = 0; j < n; ++j) {
          if (c[j]) nonzero = true;
          for (std::size_t i = 0; i < n; ++i) v[i] += BigInt(c[j]) * r.basis(i, j);
        }
        if (nonzero) {
          BigInt nv = dot(v, v);
          if (best < 0 || nv < best) best = nv;
        }
        std::size_t j = 0;
        while (j < n && c[j] == box) c[j++] = -box;
        if (j == n) break;
        ++c[j];
      }
      IntVector b1 = column(r.basis, 0);
      CHECK(dot(b1, b1) <= (BigInt(1) << (n - 1)) * best);
    }
  CHECK_THROWS_AS(lll_reduce(from_columns(std::vector<IntVector>{{1, 2}, {2, 4}})), RankError);
}

TEST_CASE("characteristic polynomial agrees with det(xI - M)") {
  std::mt19937_64 rng(15);
  for (std::size_t n = 1; n <= 6; ++n)
    for (int trial = 0; trial < 15; ++trial) {
      IntMatrix m = oracle::random_matrix(rng, n, n, -5, 5);
      if (trial % 4 == 0)
        for (std::size_t r = 0; r < n; ++r) m(r, 0) = (r == 0) ? m(0, 0) : BigInt(0);
      Polynomial p = charpoly(to_rational(m));
      CHECK(p.degree() == static_cast<int>(n));
      CHECK(p.leading() == 1);
      for (long x = -3; x <= 3; ++x) {
        RatMatrix xi = RatMatrix::identity(n);
        for (std::size_t i = 0; i < n; ++i) xi(i, i) = x;
        CHECK(p.evaluate(BigRat(x)) == oracle::cofactor_det(xi - to_rational(m)));
      }
      CHECK(p.evaluate(to_rational(m)).is_zero());
    }
}

TEST_CASE("factorization over Q") {
  Polynomial x = Polynomial::monomial(1);
  Polynomial q = x * x + x - Polynomial({BigRat(1)});
  Polynomial f = (x - Polynomial({BigRat(3)})) * q * q;
  Factorization fac = factor_over_q(f);
  CHECK(fac.str() == "(x - 3)(x^2 + x - 1)^2");
  Polynomial g = (x - Polynomial({BigRat(3)})) * (x + Polynomial({BigRat(2)})) * (x + Polynomial({BigRat(2)}));
  CHECK(factor_over_q(g).str() == "(x - 3)(x + 2)^2");
  Polynomial h = (Polynomial({BigRat(-1), BigRat(2)})) * x * x;
  CHECK(factor_over_q(h).str() == "(x - 1/2)x^2");
  CHECK(Polynomial({BigRat(-6), BigRat(-1), BigRat(1)}).str() == "x^2 - x - 6");
  Polynomial big = (x - Polynomial({BigRat(1000003)})) * (x + Polynomial({BigRat(7, 3)}));
  auto fb = factor_over_q(big);
  REQUIRE(fb.roots.size() == 2);
  CHECK(fb.roots[0].value == 1000003);
  CHECK(fb.roots[1].value == BigRat(-7, 3));
}

#include <random>

#include "doctest.h"
#include "modsym/reduction.hpp"
#include "oracles.hpp"

using namespace modsym;

namespace {

ModularSymbol sym(std::vector<IntVector> cols) {
  auto s = ModularSymbol::normalize(std::span<const IntVector>(cols));
  REQUIRE(s.has_value());
  return *s;
}

}  // namespace

TEST_CASE("normalize applies relations 1 to 3") {
  auto a = sym({{0, 2}, {1, 0}});
  CHECK(a.columns() == std::vector<IntVector>{{0, 1}, {1, 0}});
  CHECK(a.sign() == 1);
  std::vector<IntVector> prop{{1, 0}, {2, 0}};
  CHECK_FALSE(ModularSymbol::normalize(std::span<const IntVector>(prop)).has_value());
  auto b = sym({{1, 0}, {0, 1}});
  auto c = sym({{0, 1}, {1, 0}});
  CHECK(b.columns() == c.columns());
  CHECK(b.sign() == -c.sign());
  auto d = sym({{-1, 0}, {0, 3}});
  CHECK(d == b);
  std::vector<IntVector> zero{{0, 0}, {1, 0}};
  CHECK_THROWS_AS(ModularSymbol::normalize(std::span<const IntVector>(zero)), DegenerateInputError);
  std::vector<IntVector> shape{{1, 0, 0}, {0, 1, 0}};
  CHECK_THROWS_AS(ModularSymbol::normalize(std::span<const IntVector>(shape)), DimensionError);
}

TEST_CASE("cocycle expansion examples") {
  auto m = sym({{1, 0}, {1, 2}});
  SymbolChain e = cocycle_expand(m, IntVector{0, 1});
  SymbolChain expect;
  expect.add(sym({{0, 1}, {1, 2}}), 1);
  expect.add(sym({{1, 0}, {0, 1}}), 1);
  CHECK(e == expect);

  auto id = sym({{1, 0}, {0, 1}});
  SymbolChain f = cocycle_expand(id, IntVector{1, 1});
  SymbolChain expect2;
  expect2.add(sym({{1, 1}, {0, 1}}), 1);
  expect2.add(sym({{1, 1}, {1, 0}}), -1);
  CHECK(f == expect2);

  SymbolChain g = cocycle_expand(m, IntVector{1, 2});
  CHECK(g == SymbolChain(m));
}

TEST_CASE("cocycle defect and relation 4 have zero boundary") {
  std::mt19937_64 rng(21);
  for (std::size_t n = 2; n <= 4; ++n)
    for (int trial = 0; trial < 30; ++trial) {
      IntMatrix a = oracle::random_matrix(rng, n, n + 1, -7, 7);
      std::vector<IntVector> pts = columns_of(a);
      bool ok = true;
      for (auto& p : pts) ok = ok && !p.is_zero();
      if (!ok) continue;
      CHECK(relation4_chain(pts).boundary(0).empty());
      std::vector<IntVector> cols(pts.begin(), pts.begin() + n);
      auto s = ModularSymbol::normalize(std::span<const IntVector>(cols));
      if (!s) continue;
      CHECK(cocycle_defect_boundary(*s, pts[n]).empty());
    }
}

TEST_CASE("reducing points for small examples") {
  auto m = sym({{1, 0}, {1, 2}});
  for (Strategy st : {Strategy::ContinuedFraction, Strategy::Lll, Strategy::Box}) {
    ReducingCertificate c = find_reducing_point(m, st);
    CHECK(verify_certificate(m, c));
    if (st == Strategy::ContinuedFraction) {
      // Exhaustive check over the box |v| <= 2 confirms (0,1) is valid.
      CHECK(c.v == IntVector{0, 1});
      CHECK(c.child_dets == std::vector<BigInt>{1, 1});
    }
  }
  CHECK_THROWS_AS(find_reducing_point(sym({{1, 0}, {0, 1}})), PreconditionError);
}

TEST_CASE("reducing points for random 3x3 symbols") {
  std::mt19937_64 rng(22);
  int tested = 0;
  while (tested < 100) {
    IntMatrix a = oracle::random_matrix(rng, 3, 3, -10, 10);
    auto s = ModularSymbol::from_matrix(a);
    if (!s || s->det_abs() < 2 || s->det_abs() > 1000) continue;
    ++tested;
    for (Strategy st : {Strategy::Auto, Strategy::Lll, Strategy::Box}) {
      ReducingCertificate c = find_reducing_point(*s, st);
      // Independent evaluation of each replacement determinant by cofactors.
      for (std::size_t i = 0; i < 3; ++i) {
        IntMatrix child = s->matrix();
        for (std::size_t r = 0; r < 3; ++r) child(r, i) = c.v[r];
        BigInt d = abs(oracle::cofactor_det(child));
        CHECK(d == c.child_dets[i]);
        CHECK(d < s->det_abs());
      }
    }
  }
}

TEST_CASE("reduction to unimodular symbols and trace replay") {
  auto m = sym({{1, 0}, {1, 2}});
  ReductionResult r = reduce_to_unimodular(m);
  CHECK(r.chain == cocycle_expand(m, IntVector{0, 1}));
  CHECK(r.trace.steps.size() == 1);

  auto u = sym({{1, 0}, {0, 1}});
  ReductionResult ru = reduce_to_unimodular(u);
  CHECK(ru.chain == SymbolChain(u));
  CHECK(ru.trace.steps.empty());

  std::mt19937_64 rng(23);
  for (std::size_t n = 2; n <= 4; ++n)
    for (int trial = 0; trial < 10; ++trial) {
      auto s = ModularSymbol::from_matrix(oracle::random_matrix(rng, n, n, -20, 20));
      if (!s) continue;
      for (Strategy st : {Strategy::Auto, Strategy::Lll}) {
        ReductionResult res = reduce_to_unimodular(*s, st);
        CHECK(res.chain.all_unimodular());
        for (const auto& step : res.trace.steps) CHECK(verify_certificate(step.parent, step.certificate));
        CHECK(replay(SymbolChain(*s), res.trace) == res.chain);
      }
    }
}

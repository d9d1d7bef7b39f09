#include <random>

#include "doctest.h"
#include "modsym/symplectic.hpp"
#include "oracles.hpp"

using namespace modsym;

namespace {

IntVector e(std::size_t k) {
  IntVector v(4);
  v[k] = 1;
  return v;
}

SymplecticSymbol sp(std::vector<IntVector> cols) { return validate_symplectic(std::span<const IntVector>(cols)); }

// Direct pairing through the Gram matrix of the form.
BigInt gram_pairing(const IntVector& v, const IntVector& w) {
  BigInt s = 0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      long jij = (j == 3 - i) ? (i < 2 ? 1 : -1) : 0;
      s += v[i] * jij * w[j];
    }
  return s;
}

}  // namespace

TEST_CASE("symplectic pairing") {
  CHECK(pairing(e(0), e(3)) == 1);
  CHECK(pairing(e(3), e(0)) == -1);
  CHECK(pairing(e(0), e(1)) == 0);
  CHECK(pairing(e(1), e(2)) == 1);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    IntMatrix a = oracle::random_matrix(rng, 4, 4, -9, 9);
    CHECK(pairing(column(a, 0), column(a, 1)) == gram_pairing(column(a, 0), column(a, 1)));
  }
}

TEST_CASE("validation and isotropy errors") {
  SymplecticSymbol m = sp({e(0), e(1), e(2), e(0) + 2 * e(3)});
  CHECK(m.pair_products() == std::vector<BigInt>{2, 1});
  CHECK(m.det() == 2);
  try {
    sp({e(0), e(1), e(3), e(2)});
    FAIL("expected isotropy error");
  } catch (const IsotropyError& err) {
    CHECK(err.first() == 1);
    CHECK(err.second() == 3);
  }
  CHECK_THROWS_AS(sp({e(0), e(1), e(2)}), DimensionError);
  CHECK_THROWS_AS(sp({e(0), e(1), e(2), IntVector(4)}), DegenerateInputError);
}

TEST_CASE("reducing point of the det 2 example") {
  SymplecticSymbol m = sp({e(0), e(1), e(2), e(0) + 2 * e(3)});
  SymplecticCertificate c = make_symplectic_certificate(m, e(3));
  CHECK(c.pairings == std::vector<BigInt>{1, 0, 0, 1});
  CHECK(c.bounds == std::vector<BigInt>{2, 1, 1, 2});
  CHECK(verify_symplectic_certificate(m, find_symplectic_reducing_point(m)));
  CHECK_THROWS_AS(symplectic_cocycle_expand(m, e(3)), GenericityError);
  SpExpansion x = symplectic_cocycle_expand(m, e(3), true);
  CHECK(x.degenerate == std::vector<std::size_t>{1, 2});
  CHECK(x.terms.size() == 2);
  SymplecticSymbol id = sp({e(0), e(1), e(2), e(3)});
  CHECK_THROWS_AS(find_symplectic_reducing_point(id), PreconditionError);
}

TEST_CASE("relabelings preserve the apartment up to sign") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; ++t) {
    SymplecticSymbol m = random_symplectic_symbol(rng, 16);
    CanonicalSp c = canonicalize(m);
    FlagChain a = apartment_chain(m), b = apartment_chain(c.symbol);
    add_flag_chain(a, b, -c.sign);
    CHECK(a.empty());
    CHECK(abs_int(c.symbol.det()) == m.det_abs());
  }
}

TEST_CASE("generic expansions are consistent") {
  std::mt19937_64 rng(23);
  int generic = 0;
  for (int t = 0; t < 200 && generic < 30; ++t) {
    SymplecticSymbol m = random_symplectic_symbol(rng, 16);
    IntVector v(4);
    std::uniform_int_distribution<long> entry(-5, 5);
    for (std::size_t k = 0; k < 4; ++k) v[k] = entry(rng);
    bool ok = !v.is_zero();
    for (std::size_t i = 0; ok && i < 4; ++i) ok = pairing(v, m.column(i)) != 0;
    if (!ok) continue;
    ++generic;
    SpExpansion x = symplectic_cocycle_expand(m, v);
    REQUIRE(x.terms.size() == 4);
    FlagChain sum;
    for (const auto& term : x.terms) {
      CHECK(term.symbol.column(term.index) == m.column(term.index));
      CHECK(term.symbol.column(3 - term.index) == primitive_part(v));
      add_flag_chain(sum, apartment_chain(term.symbol), term.epsilon);
    }
    add_flag_chain(sum, apartment_chain(m), -1);
    CHECK(sum.empty());
  }
  CHECK(generic == 30);
}

TEST_CASE("random symbols reduce to unimodular chains") {
  std::mt19937_64 rng(2026);
  for (int t = 0; t < 40; ++t) {
    SymplecticSymbol m = random_symplectic_symbol(rng, 16);
    SpReductionResult r = reduce_sp(m);
    CHECK(r.chain.all_unimodular());
    CHECK_FALSE(r.trace.empty());
    for (const auto& node : r.trace) CHECK(verify_symplectic_certificate(node.parent, node.certificate));
    FlagChain a = apartment_chain(r.chain), b = apartment_chain(m);
    add_flag_chain(a, b, -1);
    CHECK(a.empty());
  }
}

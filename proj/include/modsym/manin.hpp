#pragma once

#include <vector>

#include "modsym/arith.hpp"
#include "modsym/symbol.hpp"

namespace modsym {

// (c : d) in P^1(Z/N), stored as its lexicographically least unit multiple.
struct P1Class {
  long c = 0;
  long d = 0;
  bool operator==(const P1Class& o) const { return c == o.c && d == o.d; }
  bool operator<(const P1Class& o) const { return c != o.c ? c < o.c : d < o.d; }
};

class P1List {
 public:
  explicit P1List(long level);

  long level() const { return level_; }
  std::size_t size() const { return classes_.size(); }
  const std::vector<P1Class>& classes() const { return classes_; }
  const P1Class& operator[](std::size_t i) const { return classes_[i]; }

  // Index of the class of (c : d); throws PreconditionError if gcd(c, d, N) != 1.
  std::size_t index_of(const BigInt& c, const BigInt& d) const;
  bool contains(const BigInt& c, const BigInt& d) const;

  // A matrix in SL_2(Z) whose bottom row reduces to the class representative.
  IntMatrix lift(std::size_t i) const;

 private:
  long level_;
  std::vector<P1Class> classes_;
  std::vector<long> table_;  // (c mod N, d mod N) -> class index, -1 if invalid
};

std::vector<P1Class> p1_classes(long level);

// Quotient of the free Q-space on P^1(Z/N) by the relations induced on
// unimodular symbols: the order-2 identification from relation 2 and the
// order-3 identification from relation 4 applied with v = m_1 + m_2.
class ManinSpace {
 public:
  long level() const { return p1_.level(); }
  const P1List& p1() const { return p1_; }
  std::size_t dimension() const { return basis_.size(); }
  std::size_t generator_count() const { return p1_.size(); }
  // Generator indices forming the quotient basis.
  const std::vector<std::size_t>& basis() const { return basis_; }
  const RatMatrix& relations() const { return relations_; }
  // dimension x generator_count; column j is the image of generator j.
  const RatMatrix& projection() const { return projection_; }

  // Generator vector of a unimodular symbol (before projection).
  std::vector<BigRat> generator_vector(const ModularSymbol& s) const;
  std::vector<BigRat> project(const ModularSymbol& s) const;
  std::vector<BigRat> project(const SymbolChain& c) const;

  // Unimodular symbol representing basis element k.
  ModularSymbol basis_symbol(std::size_t k) const;

  friend ManinSpace build_manin_space(long level);

 private:
  explicit ManinSpace(long level) : p1_(level) {}
  P1List p1_;
  RatMatrix relations_;
  std::vector<std::size_t> basis_;
  RatMatrix projection_;
};

// Builds the space and runs its self-tests: every relation is annihilated by
// the projection and the projection restricts to the identity on the basis.
ManinSpace build_manin_space(long level);

}  // namespace modsym

#pragma once

#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "modsym/arith.hpp"
#include "modsym/reduction.hpp"

namespace modsym {

// Partner index in dimension 2n (0-based): i <-> 2n - 1 - i.
inline std::size_t partner(std::size_t i, std::size_t dim) { return dim - 1 - i; }

// <v, w> = sum_{i < n} (v_i w_{bar i} - v_{bar i} w_i).
BigInt pairing(const IntVector& v, const IntVector& w);
IntMatrix symplectic_form(std::size_t dim);

// 2n primitive columns with <m_i, m_j> != 0 exactly when j is the partner of i.
class SymplecticSymbol {
 public:
  const std::vector<IntVector>& columns() const { return columns_; }
  const IntVector& column(std::size_t i) const { return columns_[i]; }
  std::size_t dim() const { return columns_.size(); }
  const BigInt& pair(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }
  // <m_i, m_bar i> for i < n.
  std::vector<BigInt> pair_products() const;
  const BigInt& det() const { return det_; }
  BigInt det_abs() const { return abs_int(det_); }
  bool is_unimodular() const { return det_abs() == 1; }
  BigInt max_pair_product() const;
  std::string str() const;

  friend SymplecticSymbol validate_symplectic(std::span<const IntVector> columns);

 private:
  std::vector<IntVector> columns_;
  std::vector<BigInt> table_;
  BigInt det_;
};

// Primitivizes the columns, checks the isotropy pattern (IsotropyError names
// the first offending 1-based pair) and the product formula for det.
SymplecticSymbol validate_symplectic(std::span<const IntVector> columns);
SymplecticSymbol validate_symplectic(std::span<const std::vector<BigRat>> columns);

// Canonical representative under the hyperoctahedral relabelings, with the
// orientation sign of the relabeling that produced it.
struct CanonicalSp {
  SymplecticSymbol symbol;
  int sign;
};
CanonicalSp canonicalize(const SymplecticSymbol& s);

struct SpLess {
  bool operator()(const SymplecticSymbol& a, const SymplecticSymbol& b) const;
};

class SymplecticChain {
 public:
  using Terms = std::map<SymplecticSymbol, BigInt, SpLess>;
  void add(const SymplecticSymbol& s, const BigInt& coefficient);
  void add(const SymplecticChain& other, const BigInt& scale = 1);
  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  bool operator==(const SymplecticChain& o) const;
  bool all_unimodular() const;

 private:
  Terms terms_;
};

// The apartment of a 2n = 4 symbol as an oriented cycle in the building:
// m1 -> L12 -> m2 -> L24 -> m4 -> L34 -> m3 -> L13 -> m1, with an edge
// (point, Lagrangian) counted +1 when traversed point -> Lagrangian.
using FlagEdge = std::pair<IntVector, std::vector<BigRat>>;
struct FlagEdgeLess {
  bool operator()(const FlagEdge& a, const FlagEdge& b) const;
};
using FlagChain = std::map<FlagEdge, BigInt, FlagEdgeLess>;
FlagChain apartment_chain(const SymplecticSymbol& s);
void add_flag_chain(FlagChain& acc, const FlagChain& c, const BigInt& scale);
FlagChain apartment_chain(const SymplecticChain& c);

struct SymplecticCertificate {
  IntVector v;
  std::vector<BigInt> pairings;  // |<m_i, v>|
  std::vector<BigInt> bounds;    // |<m_i, m_bar i>|
};

SymplecticCertificate make_symplectic_certificate(const SymplecticSymbol& m, const IntVector& v);
bool verify_symplectic_certificate(const SymplecticSymbol& m, const SymplecticCertificate& c);
SymplecticCertificate find_symplectic_reducing_point(const SymplecticSymbol& m, Strategy strategy = Strategy::Auto);

struct SpExpansionTerm {
  std::size_t index;  // i: m_i kept, v placed at bar i
  int epsilon;
  SymplecticSymbol symbol;
};

struct SpExpansion {
  std::vector<SpExpansionTerm> terms;
  std::vector<std::size_t> degenerate;  // indices i with <v, m_i> = 0, dropped
};

// Sum of eps_i [m_i(v)]: m_i(v) keeps m_i, puts v at bar i and the primitive
// part of m_ij = <v, m_j> m_i - <v, m_i> m_j at every other position j. The
// signs are the unique-first assignment making the apartment chains agree.
// A v with some <v, m_i> = 0 raises GenericityError unless allow_degenerate.
SpExpansion symplectic_cocycle_expand(const SymplecticSymbol& m, const IntVector& v, bool allow_degenerate = false);

struct SpInnerPiece {
  SymplecticSymbol symbol;
  BigInt coefficient;
};

struct SpTraceNode {
  SymplecticSymbol parent;
  SymplecticCertificate certificate;
  SpExpansion expansion;
  std::vector<std::vector<SpInnerPiece>> pieces;  // per expansion term
  std::size_t inner_steps = 0;                    // SL_2 reduction steps used
};

struct SpReductionResult {
  SymplecticChain chain;
  std::vector<SpTraceNode> trace;
};

// Full reduction of a 2n = 4 symbol; every expansion and inner SL_2 step is
// audited by equality of apartment chains.
SpReductionResult reduce_sp(const SymplecticSymbol& m, Strategy strategy = Strategy::Auto);

// Random Sp_4 symbol with 2 <= |det| <= max_det built from hyperbolic pairs.
SymplecticSymbol random_symplectic_symbol(std::mt19937_64& rng, long max_det, long entry_bound = 3);

}  // namespace modsym

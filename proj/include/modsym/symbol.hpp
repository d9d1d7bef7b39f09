#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "modsym/arith.hpp"
#include "modsym/simplex.hpp"

namespace modsym {

// Canonical modular symbol sign * [m_1, ..., m_n]: primitive columns with
// positive leading entry, strictly increasing, nonzero determinant.
class ModularSymbol {
 public:
  // Relations 1-3: primitivize, sort with parity, Zero (nullopt) for det 0.
  static std::optional<ModularSymbol> normalize(std::span<const IntVector> columns);
  static std::optional<ModularSymbol> normalize(std::span<const std::vector<BigRat>> columns);
  static std::optional<ModularSymbol> from_matrix(const IntMatrix& m);

  std::size_t dim() const { return columns_.size(); }
  const std::vector<IntVector>& columns() const { return columns_; }
  const IntVector& column(std::size_t i) const { return columns_[i]; }
  int sign() const { return sign_; }
  const BigInt& det_abs() const { return det_abs_; }
  // Determinant of the matrix of canonical columns.
  const BigInt& det() const { return det_; }
  bool is_unimodular() const { return det_abs_ == 1; }
  IntMatrix matrix() const { return from_columns(columns_); }

  ModularSymbol with_sign(int sign) const;
  ModularSymbol negated() const { return with_sign(-sign_); }

  std::string str() const;

 private:
  ModularSymbol() = default;
  std::vector<IntVector> columns_;
  int sign_ = 1;
  BigInt det_abs_;
  BigInt det_;
};

// Columns first, sign last.
int compare(const ModularSymbol& a, const ModularSymbol& b);
inline bool operator<(const ModularSymbol& a, const ModularSymbol& b) { return compare(a, b) < 0; }
inline bool operator==(const ModularSymbol& a, const ModularSymbol& b) { return compare(a, b) == 0; }

// g * [m_1..m_n] = [g m_1 .. g m_n]; nullopt if the image is degenerate.
std::optional<ModularSymbol> act(const IntMatrix& g, const ModularSymbol& s);

// Integer combination of canonical symbols. Keys always carry sign +1; the
// symbol sign is folded into the coefficient on insertion.
class SymbolChain {
 public:
  using Terms = std::map<ModularSymbol, BigInt>;

  SymbolChain() = default;
  explicit SymbolChain(const ModularSymbol& s) { add(s, 1); }

  void add(const ModularSymbol& s, const BigInt& coefficient);
  void add(const SymbolChain& other, const BigInt& scale = 1);
  // Adds normalize(columns) when it is nonzero.
  void add_columns(std::span<const IntVector> columns, const BigInt& coefficient);

  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  BigInt coefficient(const ModularSymbol& s) const;
  bool operator==(const SymbolChain& o) const { return terms_ == o.terms_; }

  bool all_unimodular() const;
  BigInt max_det() const;
  std::string str() const;

 private:
  Terms terms_;
};

// Relation 4 solved for [m]: sum over i of [m with column i replaced by v].
// Terms with det 0 are dropped.
SymbolChain cocycle_expand(const ModularSymbol& m, const IntVector& v);

// The symbol or chain as a chain of point tuples, degenerate tuples kept.
PointChain as_point_chain(const SymbolChain& c);
PointChain as_point_chain(const ModularSymbol& s);

// Boundary of [m] - sum_i [m_i(v)] with every replacement term kept,
// including the degenerate ones. Zero for every m and v.
PointChain cocycle_defect_boundary(const ModularSymbol& m, const IntVector& v);

// Alternating relation-4 sum over n+1 points, as a point chain.
PointChain relation4_chain(std::span<const IntVector> points);

}  // namespace modsym

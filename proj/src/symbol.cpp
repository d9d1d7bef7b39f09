#include "modsym/symbol.hpp"

#include <sstream>

namespace modsym {

namespace {

void check_shape(std::size_t count, std::size_t dim) {
  if (count == 0) throw DimensionError("modular symbol needs at least one column");
  if (dim != count) throw DimensionError("modular symbol needs n columns of dimension n");
}

}  // namespace

std::optional<ModularSymbol> ModularSymbol::normalize(std::span<const IntVector> columns) {
  check_shape(columns.size(), columns.empty() ? 0 : columns[0].size());
  ModularSymbol s;
  s.columns_.reserve(columns.size());
  for (const auto& c : columns) {
    if (c.size() != columns.size()) throw DimensionError("modular symbol needs n columns of dimension n");
    if (c.is_zero()) throw DegenerateInputError("modular symbol column is zero");
    s.columns_.push_back(c);
  }
  int sign = canonicalize_tuple(s.columns_);
  if (sign == 0) return std::nullopt;
  s.det_ = modsym::det(s.matrix());
  if (s.det_ == 0) return std::nullopt;
  s.sign_ = sign;
  s.det_abs_ = abs_int(s.det_);
  return s;
}

std::optional<ModularSymbol> ModularSymbol::normalize(std::span<const std::vector<BigRat>> columns) {
  std::vector<IntVector> ints;
  ints.reserve(columns.size());
  for (const auto& c : columns) {
    bool zero = true;
    for (const auto& x : c) zero = zero && x == 0;
    if (zero) throw DegenerateInputError("modular symbol column is zero");
    ints.push_back(make_primitive(c).vector);
  }
  return normalize(std::span<const IntVector>(ints));
}

std::optional<ModularSymbol> ModularSymbol::from_matrix(const IntMatrix& m) {
  std::vector<IntVector> cols = columns_of(m);
  return normalize(std::span<const IntVector>(cols));
}

ModularSymbol ModularSymbol::with_sign(int sign) const {
  ModularSymbol s = *this;
  s.sign_ = sign;
  return s;
}

std::string ModularSymbol::str() const {
  std::ostringstream os;
  os << (sign_ < 0 ? "-[" : "[");
  for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << columns_[i].str();
  os << ']';
  return os.str();
}

int compare(const ModularSymbol& a, const ModularSymbol& b) {
  if (a.dim() != b.dim()) return a.dim() < b.dim() ? -1 : 1;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    int c = compare(a.column(i), b.column(i));
    if (c != 0) return c;
  }
  if (a.sign() != b.sign()) return a.sign() < b.sign() ? -1 : 1;
  return 0;
}

std::optional<ModularSymbol> act(const IntMatrix& g, const ModularSymbol& s) {
  std::vector<IntVector> cols;
  cols.reserve(s.dim());
  for (const auto& c : s.columns()) cols.push_back(g * c);
  for (const auto& c : cols)
    if (c.is_zero()) return std::nullopt;
  auto r = ModularSymbol::normalize(std::span<const IntVector>(cols));
  if (!r) return r;
  return r->with_sign(r->sign() * s.sign());
}

void SymbolChain::add(const ModularSymbol& s, const BigInt& coefficient) {
  if (coefficient == 0) return;
  auto [it, inserted] = terms_.try_emplace(s.with_sign(1), 0);
  if (s.sign() > 0) it->second += coefficient; else it->second -= coefficient;
  if (it->second == 0) terms_.erase(it);
}

void SymbolChain::add(const SymbolChain& other, const BigInt& scale) {
  if (scale == 0) return;
  for (const auto& [s, c] : other.terms_) {
    auto [it, inserted] = terms_.try_emplace(s, 0);
    it->second += scale * c;
    if (it->second == 0) terms_.erase(it);
  }
}

void SymbolChain::add_columns(std::span<const IntVector> columns, const BigInt& coefficient) {
  if (auto s = ModularSymbol::normalize(columns)) add(*s, coefficient);
}

BigInt SymbolChain::coefficient(const ModularSymbol& s) const {
  auto it = terms_.find(s.with_sign(1));
  if (it == terms_.end()) return 0;
  return s.sign() > 0 ? it->second : BigInt(-it->second);
}

bool SymbolChain::all_unimodular() const {
  for (const auto& [s, c] : terms_)
    if (!s.is_unimodular()) return false;
  return true;
}

BigInt SymbolChain::max_det() const {
  BigInt best = 0;
  for (const auto& [s, c] : terms_)
    if (s.det_abs() > best) best = s.det_abs();
  return best;
}

std::string SymbolChain::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [s, c] : terms_) {
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    BigInt mag = abs_int(c);
    if (mag != 1) os << mag.get_str() << "*";
    os << s.str();
  }
  return os.str();
}

SymbolChain cocycle_expand(const ModularSymbol& m, const IntVector& v) {
  if (v.size() != m.dim()) throw DimensionError("cocycle expansion: point dimension differs");
  if (v.is_zero()) throw DegenerateInputError("cocycle expansion: zero point");
  SymbolChain out;
  std::vector<IntVector> cols = m.columns();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    IntVector saved = cols[i];
    cols[i] = v;
    out.add_columns(cols, m.sign());
    cols[i] = std::move(saved);
  }
  return out;
}

PointChain as_point_chain(const ModularSymbol& s) {
  PointChain c;
  c.add(s.columns(), s.sign());
  return c;
}

PointChain as_point_chain(const SymbolChain& chain) {
  PointChain c;
  for (const auto& [s, k] : chain.terms()) c.add(s.columns(), BigRat(k));
  return c;
}

PointChain cocycle_defect_boundary(const ModularSymbol& m, const IntVector& v) {
  PointChain c = as_point_chain(m);
  std::vector<IntVector> cols = m.columns();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    IntVector saved = cols[i];
    cols[i] = v;
    c.add(cols, BigRat(-m.sign()));
    cols[i] = std::move(saved);
  }
  return c.boundary(0);
}

PointChain relation4_chain(std::span<const IntVector> points) {
  PointChain c;
  for (std::size_t i = 0; i < points.size(); ++i) {
    PointTuple face;
    for (std::size_t j = 0; j < points.size(); ++j)
      if (j != i) face.push_back(points[j]);
    c.add(std::move(face), (i % 2) ? BigRat(-1) : BigRat(1));
  }
  return c;
}

}  // namespace modsym

#include "modsym/symplectic.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <sstream>

#include "modsym/lll.hpp"
#include "modsym/symbol.hpp"

namespace modsym {

namespace {

void require_dim4(std::size_t dim) {
  if (dim != 4) throw DimensionError("symplectic reduction is implemented for 2n = 4");
}

std::vector<BigRat> lagrangian_key(const IntVector& a, const IntVector& b) {
  const std::size_t d = a.size();
  std::array<std::vector<BigRat>, 2> r;
  for (std::size_t c = 0; c < d; ++c) {
    r[0].push_back(BigRat(a[c]));
    r[1].push_back(BigRat(b[c]));
  }
  std::size_t row = 0;
  for (std::size_t c = 0; c < d && row < 2; ++c) {
    std::size_t p = row;
    while (p < 2 && r[p][c] == 0) ++p;
    if (p == 2) continue;
    std::swap(r[row], r[p]);
    BigRat inv = 1 / r[row][c];
    for (auto& x : r[row]) x *= inv;
    for (std::size_t o = 0; o < 2; ++o) {
      if (o == row || r[o][c] == 0) continue;
      BigRat f = r[o][c];
      for (std::size_t k = 0; k < d; ++k) r[o][k] -= f * r[row][k];
    }
    ++row;
  }
  if (row != 2) throw InternalError("Lagrangian spanned by dependent vectors");
  std::vector<BigRat> key = r[0];
  key.insert(key.end(), r[1].begin(), r[1].end());
  return key;
}

using Relabeling = std::array<std::size_t, 4>;

struct SignedRelabeling {
  Relabeling perm;
  int sign;
};

SymplecticSymbol relabel(const SymplecticSymbol& s, const Relabeling& p) {
  std::vector<IntVector> cols(4);
  for (std::size_t k = 0; k < 4; ++k) cols[k] = s.column(p[k]);
  return validate_symplectic(std::span<const IntVector>(cols));
}

int chain_ratio(const FlagChain& a, const FlagChain& b) {
  FlagChain sum = a, diff = a;
  add_flag_chain(sum, b, 1);
  add_flag_chain(diff, b, -1);
  if (diff.empty()) return 1;
  if (sum.empty()) return -1;
  return 0;
}

// The 8 position permutations preserving the partner pairing, each with the
// orientation sign read off the apartment chain of the standard symbol.
const std::vector<SignedRelabeling>& hyperoctahedral() {
  static const std::vector<SignedRelabeling> group = [] {
    std::vector<IntVector> std_cols;
    for (std::size_t k = 0; k < 4; ++k) {
      IntVector e(4);
      e[k] = 1;
      std_cols.push_back(e);
    }
    SymplecticSymbol base = validate_symplectic(std::span<const IntVector>(std_cols));
    FlagChain base_chain = apartment_chain(base);
    std::vector<SignedRelabeling> out;
    Relabeling p{0, 1, 2, 3};
    do {
      bool ok = true;
      for (std::size_t k = 0; k < 4; ++k) ok = ok && p[partner(k, 4)] == partner(p[k], 4);
      if (!ok) continue;
      int sign = chain_ratio(apartment_chain(relabel(base, p)), base_chain);
      if (sign == 0) throw InternalError("relabeling does not preserve the apartment");
      out.push_back({p, sign});
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
  }();
  return group;
}

bool chains_equal(const FlagChain& a, const FlagChain& b) { return chain_ratio(a, b) == 1; }

}  // namespace

BigInt pairing(const IntVector& v, const IntVector& w) {
  if (v.size() != w.size() || v.size() % 2 != 0) throw DimensionError("pairing needs two vectors of equal even length");
  const std::size_t d = v.size();
  BigInt s = 0;
  for (std::size_t i = 0; i < d / 2; ++i) s += v[i] * w[d - 1 - i] - v[d - 1 - i] * w[i];
  return s;
}

IntMatrix symplectic_form(std::size_t dim) {
  if (dim % 2 != 0) throw DimensionError("symplectic form needs even dimension");
  IntMatrix j(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) j(i, partner(i, dim)) = i < dim / 2 ? 1 : -1;
  return j;
}

std::vector<BigInt> SymplecticSymbol::pair_products() const {
  std::vector<BigInt> out;
  for (std::size_t i = 0; i < dim() / 2; ++i) out.push_back(pair(i, partner(i, dim())));
  return out;
}

BigInt SymplecticSymbol::max_pair_product() const {
  BigInt best = 0;
  for (const auto& p : pair_products()) best = std::max(best, abs_int(p));
  return best;
}

std::string SymplecticSymbol::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < dim(); ++i) {
    if (i) os << ",";
    os << "(";
    for (std::size_t r = 0; r < dim(); ++r) os << (r ? "," : "") << columns_[i][r].get_str();
    os << ")";
  }
  os << "]";
  return os.str();
}

SymplecticSymbol validate_symplectic(std::span<const IntVector> columns) {
  const std::size_t d = columns.size();
  if (d == 0 || d % 2 != 0) throw DimensionError("a symplectic symbol needs an even, positive number of columns");
  for (const auto& c : columns)
    if (c.size() != d) throw DimensionError("column length must equal the number of columns");
  SymplecticSymbol s;
  for (const auto& c : columns) s.columns_.push_back(primitive_part(c));
  s.table_.assign(d * d, 0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      BigInt p = pairing(s.columns_[i], s.columns_[j]);
      bool partners = j == partner(i, d);
      if (partners == (p == 0)) {
        std::ostringstream os;
        os << "isotropy pattern violated at (" << i + 1 << "," << j + 1 << "): <m_" << i + 1 << ", m_" << j + 1
           << "> = " << p.get_str();
        throw IsotropyError(os.str(), static_cast<int>(i + 1), static_cast<int>(j + 1));
      }
      s.table_[i * d + j] = p;
      s.table_[j * d + i] = -p;
    }
  s.det_ = 1;
  for (const auto& p : s.pair_products()) s.det_ *= p;
  if (det(from_columns(std::span<const IntVector>(s.columns_))) != s.det_)
    throw InternalError("determinant disagrees with the product of partner pairings");
  return s;
}

SymplecticSymbol validate_symplectic(std::span<const std::vector<BigRat>> columns) {
  std::vector<IntVector> ints;
  for (const auto& c : columns) ints.push_back(make_primitive(std::span<const BigRat>(c)).vector);
  return validate_symplectic(std::span<const IntVector>(ints));
}

bool SpLess::operator()(const SymplecticSymbol& a, const SymplecticSymbol& b) const {
  return std::lexicographical_compare(a.columns().begin(), a.columns().end(), b.columns().begin(), b.columns().end());
}

CanonicalSp canonicalize(const SymplecticSymbol& s) {
  require_dim4(s.dim());
  std::optional<CanonicalSp> best;
  for (const auto& g : hyperoctahedral()) {
    SymplecticSymbol r = relabel(s, g.perm);
    if (!best || SpLess{}(r, best->symbol)) best = CanonicalSp{r, g.sign};
  }
  return *best;
}

void SymplecticChain::add(const SymplecticSymbol& s, const BigInt& coefficient) {
  if (coefficient == 0) return;
  CanonicalSp c = canonicalize(s);
  auto [it, inserted] = terms_.try_emplace(c.symbol, 0);
  it->second += c.sign * coefficient;
  if (it->second == 0) terms_.erase(it);
}

void SymplecticChain::add(const SymplecticChain& other, const BigInt& scale) {
  if (scale == 0) return;
  for (const auto& [s, k] : other.terms_) {
    auto [it, inserted] = terms_.try_emplace(s, 0);
    it->second += scale * k;
    if (it->second == 0) terms_.erase(it);
  }
}

bool SymplecticChain::operator==(const SymplecticChain& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (auto a = terms_.begin(), b = o.terms_.begin(); a != terms_.end(); ++a, ++b)
    if (a->first.columns() != b->first.columns() || a->second != b->second) return false;
  return true;
}

bool SymplecticChain::all_unimodular() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.is_unimodular(); });
}

bool FlagEdgeLess::operator()(const FlagEdge& a, const FlagEdge& b) const {
  int c = compare(a.first, b.first);
  if (c != 0) return c < 0;
  return std::lexicographical_compare(a.second.begin(), a.second.end(), b.second.begin(), b.second.end());
}

void add_flag_chain(FlagChain& acc, const FlagChain& c, const BigInt& scale) {
  for (const auto& [e, k] : c) {
    auto [it, inserted] = acc.try_emplace(e, 0);
    it->second += scale * k;
    if (it->second == 0) acc.erase(it);
  }
}

FlagChain apartment_chain(const SymplecticSymbol& s) {
  require_dim4(s.dim());
  static constexpr std::array<std::size_t, 4> cycle{0, 1, 3, 2};
  FlagChain out;
  auto bump = [&](const IntVector& p, const std::vector<BigRat>& l, int sign) {
    FlagChain one{{FlagEdge{p, l}, BigInt(sign)}};
    add_flag_chain(out, one, 1);
  };
  for (std::size_t k = 0; k < 4; ++k) {
    const IntVector& a = s.column(cycle[k]);
    const IntVector& b = s.column(cycle[(k + 1) % 4]);
    std::vector<BigRat> l = lagrangian_key(a, b);
    bump(a, l, 1);
    bump(b, l, -1);
  }
  return out;
}

FlagChain apartment_chain(const SymplecticChain& c) {
  FlagChain out;
  for (const auto& [s, k] : c.terms()) add_flag_chain(out, apartment_chain(s), k);
  return out;
}

SymplecticCertificate make_symplectic_certificate(const SymplecticSymbol& m, const IntVector& v) {
  SymplecticCertificate c{v, {}, {}};
  for (std::size_t i = 0; i < m.dim(); ++i) {
    c.pairings.push_back(abs_int(pairing(m.column(i), v)));
    c.bounds.push_back(abs_int(m.pair(i, partner(i, m.dim()))));
  }
  if (!verify_symplectic_certificate(m, c)) throw InternalError("invalid symplectic reducing point " + v.str());
  return c;
}

bool verify_symplectic_certificate(const SymplecticSymbol& m, const SymplecticCertificate& c) {
  if (c.v.size() != m.dim() || c.v.is_zero()) return false;
  if (c.pairings.size() != m.dim() || c.bounds.size() != m.dim()) return false;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    if (c.pairings[i] != abs_int(pairing(m.column(i), c.v))) return false;
    if (c.bounds[i] != abs_int(m.pair(i, partner(i, m.dim())))) return false;
    if (c.pairings[i] >= c.bounds[i]) return false;
  }
  return true;
}

SymplecticCertificate find_symplectic_reducing_point(const SymplecticSymbol& m, Strategy strategy) {
  if (m.is_unimodular()) throw PreconditionError("symbol is already unimodular");
  // With v = sum t_j m_j one has <m_i, v> = t_{bar i} <m_i, m_{bar i}>, so the
  // condition is |t_j| < 1 for all j: the same as for the SL_{2n} symbol.
  auto s = ModularSymbol::normalize(std::span<const IntVector>(m.columns()));
  if (!s) throw InternalError("symplectic symbol with zero determinant");
  ReducingCertificate r = find_reducing_point(*s, strategy);
  return make_symplectic_certificate(m, r.v);
}

SpExpansion symplectic_cocycle_expand(const SymplecticSymbol& m, const IntVector& v, bool allow_degenerate) {
  require_dim4(m.dim());
  const std::size_t d = m.dim();
  SpExpansion out;
  std::vector<BigInt> a(d);
  for (std::size_t i = 0; i < d; ++i) a[i] = pairing(v, m.column(i));
  for (std::size_t i = 0; i < d; ++i) {
    if (a[i] == 0) {
      if (!allow_degenerate) throw GenericityError("reducing point is not generic: <v, m_" + std::to_string(i + 1) + "> = 0");
      out.degenerate.push_back(i);
      continue;
    }
    std::vector<IntVector> cols(d);
    for (std::size_t j = 0; j < d; ++j) {
      if (j == i) cols[j] = m.column(i);
      else if (j == partner(i, d)) cols[j] = v;
      else cols[j] = a[j] * m.column(i) - a[i] * m.column(j);
    }
    out.terms.push_back({i, 1, validate_symplectic(std::span<const IntVector>(cols))});
  }
  const FlagChain target = apartment_chain(m);
  std::vector<FlagChain> parts;
  for (const auto& t : out.terms) parts.push_back(apartment_chain(t.symbol));
  const std::size_t k = parts.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    FlagChain sum;
    for (std::size_t t = 0; t < k; ++t) add_flag_chain(sum, parts[t], (mask >> t) & 1 ? -1 : 1);
    if (chains_equal(sum, target)) {
      for (std::size_t t = 0; t < k; ++t) out.terms[t].epsilon = (mask >> t) & 1 ? -1 : 1;
      return out;
    }
  }
  throw InternalError("no sign assignment makes the symplectic expansion consistent for v = " + v.str());
}

namespace {

// SL_2 reduction of the pair at positions q, bar q of a term, carried out in
// coordinates on the lattice W = span(m_i, v)^perp.
std::vector<SpInnerPiece> inner_reduce(const SymplecticSymbol& t, std::size_t i, Strategy strategy, std::size_t& steps) {
  const std::size_t d = t.dim();
  const std::size_t ib = partner(i, d);
  std::size_t q = 0;
  while (q == i || q == ib) ++q;
  const std::size_t qb = partner(q, d);
  if (t.pair(q, qb) == 1 || t.pair(q, qb) == -1) return {{t, 1}};
  IntMatrix jf = symplectic_form(d);
  IntMatrix rows(2, d);
  for (std::size_t c = 0; c < d; ++c)
    for (std::size_t r = 0; r < d; ++r) {
      rows(0, c) += t.column(i)[r] * jf(r, c);
      rows(1, c) += t.column(ib)[r] * jf(r, c);
    }
  IntMatrix basis = lll_reduce(integer_kernel(rows)).basis;
  auto coords = [&](const IntVector& w) {
    std::vector<BigRat> x = solve_in_span(basis, w);
    IntVector out(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (x[k].get_den() != 1) throw InternalError("term column outside the complement lattice");
      out[k] = x[k].get_num();
    }
    return out;
  };
  std::vector<IntVector> inner{coords(t.column(q)), coords(t.column(qb))};
  auto s = ModularSymbol::normalize(std::span<const IntVector>(inner));
  if (!s) throw InternalError("degenerate inner symbol");
  ReductionResult r = reduce_to_unimodular(*s, strategy);
  steps += r.trace.steps.size();
  std::vector<SpInnerPiece> out;
  for (const auto& [piece, k] : r.chain.terms()) {
    std::vector<IntVector> cols = t.columns();
    cols[q] = basis * piece.column(0);
    cols[qb] = basis * piece.column(1);
    out.push_back({validate_symplectic(std::span<const IntVector>(cols)), k * piece.sign()});
  }
  FlagChain sum;
  for (const auto& p : out) add_flag_chain(sum, apartment_chain(p.symbol), p.coefficient);
  if (!chains_equal(sum, apartment_chain(t))) throw InternalError("inner SL_2 reduction changed the apartment chain");
  return out;
}

struct MeasureDesc {
  bool operator()(const SymplecticSymbol& a, const SymplecticSymbol& b) const {
    BigInt ma = a.max_pair_product(), mb = b.max_pair_product();
    if (ma != mb) return ma > mb;
    return SpLess{}(a, b);
  }
};

}  // namespace

SpReductionResult reduce_sp(const SymplecticSymbol& m, Strategy strategy) {
  require_dim4(m.dim());
  SpReductionResult result;
  std::map<SymplecticSymbol, BigInt, MeasureDesc> pending;
  auto push = [&](const SymplecticSymbol& s, const BigInt& k) {
    CanonicalSp c = canonicalize(s);
    auto [it, inserted] = pending.try_emplace(c.symbol, 0);
    it->second += c.sign * k;
  };
  push(m, 1);
  while (!pending.empty()) {
    auto node = pending.extract(pending.begin());
    const SymplecticSymbol& s = node.key();
    const BigInt& k = node.mapped();
    if (k == 0) continue;
    if (s.is_unimodular()) {
      result.chain.add(s, k);
      continue;
    }
    SpTraceNode t{s, find_symplectic_reducing_point(s, strategy), {}, {}, 0};
    t.expansion = symplectic_cocycle_expand(s, t.certificate.v, true);
    for (const auto& term : t.expansion.terms) {
      t.pieces.push_back(inner_reduce(term.symbol, term.index, strategy, t.inner_steps));
      for (const auto& p : t.pieces.back()) {
        if (p.symbol.max_pair_product() >= s.max_pair_product()) throw InternalError("symplectic reduction measure did not decrease");
        push(p.symbol, k * term.epsilon * p.coefficient);
      }
    }
    result.trace.push_back(std::move(t));
  }
  return result;
}

SymplecticSymbol random_symplectic_symbol(std::mt19937_64& rng, long max_det, long entry_bound) {
  std::uniform_int_distribution<long> entry(-entry_bound, entry_bound);
  auto random_vector = [&](std::size_t n) {
    IntVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = entry(rng);
    return v;
  };
  IntMatrix jf = symplectic_form(4);
  for (;;) {
    IntVector m1 = random_vector(4);
    IntVector w = random_vector(4);
    if (m1.is_zero() || w.is_zero()) continue;
    m1 = primitive_part(m1);
    IntVector m4 = primitive_part(w);
    BigInt d1 = pairing(m1, m4);
    if (d1 == 0 || abs_int(d1) > max_det) continue;
    IntMatrix rows(2, 4);
    for (std::size_t c = 0; c < 4; ++c)
      for (std::size_t r = 0; r < 4; ++r) {
        rows(0, c) += m1[r] * jf(r, c);
        rows(1, c) += m4[r] * jf(r, c);
      }
    IntMatrix basis = lll_reduce(integer_kernel(rows)).basis;
    IntVector x = random_vector(2), y = random_vector(2);
    if (x.is_zero() || y.is_zero()) continue;
    IntVector m2 = primitive_part(basis * x), m3 = primitive_part(basis * y);
    BigInt d2 = pairing(m2, m3);
    BigInt d = abs_int(d1 * d2);
    if (d2 == 0 || d < 2 || d > max_det) continue;
    std::vector<IntVector> cols{m1, m2, m3, m4};
    return validate_symplectic(std::span<const IntVector>(cols));
  }
}

}  // namespace modsym

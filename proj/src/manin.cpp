#include "modsym/manin.hpp"

#include <algorithm>
#include <numeric>

namespace modsym {

namespace {

long mod(long a, long n) {
  long r = a % n;
  return r < 0 ? r + n : r;
}

long mod(const BigInt& a, long n) {
  BigInt r = a % n;
  if (r < 0) r += n;
  return r.get_si();
}

}  // namespace

P1List::P1List(long level) : level_(level) {
  if (level < 1) throw PreconditionError("level must be at least 1");
  const long n = level;
  std::vector<long> units;
  for (long u = 1; u <= n; ++u)
    if (std::gcd(u, n) == 1) units.push_back(u % n);
  table_.assign(static_cast<std::size_t>(n * n), -1);
  std::vector<std::pair<P1Class, std::vector<long>>> found;
  std::vector<long> canon(static_cast<std::size_t>(n * n), -1);
  for (long c = 0; c < n; ++c)
    for (long d = 0; d < n; ++d) {
      if (std::gcd(std::gcd(c, d), n) != 1) continue;
      P1Class best{c, d};
      for (long u : units) {
        P1Class cand{mod(u * c, n), mod(u * d, n)};
        if (cand < best) best = cand;
      }
      canon[c * n + d] = best.c * n + best.d;
    }
  for (long key = 0; key < n * n; ++key)
    if (canon[key] == key) classes_.push_back({key / n, key % n});
  for (long key = 0; key < n * n; ++key) {
    if (canon[key] < 0) continue;
    P1Class rep{canon[key] / n, canon[key] % n};
    auto it = std::lower_bound(classes_.begin(), classes_.end(), rep);
    table_[key] = it - classes_.begin();
  }
}

std::size_t P1List::index_of(const BigInt& c, const BigInt& d) const {
  long cc = mod(c, level_), dd = mod(d, level_);
  long idx = table_[cc * level_ + dd];
  if (idx < 0) throw PreconditionError("(c : d) is not a point of P^1(Z/N)");
  return static_cast<std::size_t>(idx);
}

bool P1List::contains(const BigInt& c, const BigInt& d) const {
  return table_[mod(c, level_) * level_ + mod(d, level_)] >= 0;
}

IntMatrix P1List::lift(std::size_t i) const {
  BigInt c = classes_[i].c, d = classes_[i].d;
  if (c == 0) c = level_;
  while (true) {
    BigInt g;
    mpz_gcd(g.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
    if (g == 1) break;
    d += level_;
  }
  BigInt g, x, y;
  // x d - y c = 1 gives [[x, y], [c, d]] in SL_2(Z)
  mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), d.get_mpz_t(), c.get_mpz_t());
  IntMatrix m(2, 2);
  m(0, 0) = x;
  m(0, 1) = -y;
  m(1, 0) = c;
  m(1, 1) = d;
  return m;
}

std::vector<P1Class> p1_classes(long level) { return P1List(level).classes(); }

namespace {

struct GeneratorTerm {
  std::size_t index;
  int sign;
};

// The unimodular tuple (u | w) as a signed generator.
GeneratorTerm raw_generator(const P1List& p1, const IntMatrix& m) {
  BigInt d = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  if (d == 1) return {p1.index_of(m(1, 0), m(1, 1)), 1};
  if (d == -1) return {p1.index_of(m(1, 1), m(1, 0)), -1};
  throw PreconditionError("generator requested for a nonunimodular tuple");
}

IntMatrix mat2(long a, long b, long c, long d) {
  IntMatrix m(2, 2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  return m;
}

// Reduced row echelon form in place; returns the pivot column of each row.
std::vector<std::size_t> rref(RatMatrix& a) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t p = row;
    while (p < a.rows() && a(p, col) == 0) ++p;
    if (p == a.rows()) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(row, j), a(p, j));
    BigRat inv = 1 / a(row, col);
    for (std::size_t j = 0; j < a.cols(); ++j) a(row, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col) == 0) continue;
      BigRat f = a(i, col);
      for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) -= f * a(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::vector<BigRat> ManinSpace::generator_vector(const ModularSymbol& s) const {
  if (s.dim() != 2) throw DimensionError("Manin symbols are 2-dimensional");
  if (!s.is_unimodular()) throw PreconditionError("projection needs a unimodular symbol; reduce " + s.str() + " first");
  std::vector<BigRat> v(generator_count());
  GeneratorTerm t = raw_generator(p1_, s.matrix());
  v[t.index] = t.sign * s.sign();
  return v;
}

std::vector<BigRat> ManinSpace::project(const ModularSymbol& s) const {
  std::vector<BigRat> out(dimension());
  if (s.dim() != 2) throw DimensionError("Manin symbols are 2-dimensional");
  if (!s.is_unimodular()) throw PreconditionError("projection needs a unimodular symbol; reduce " + s.str() + " first");
  GeneratorTerm t = raw_generator(p1_, s.matrix());
  const int sign = t.sign * s.sign();
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = sign * projection_(k, t.index);
  return out;
}

std::vector<BigRat> ManinSpace::project(const SymbolChain& c) const {
  std::vector<BigRat> out(dimension());
  for (const auto& [s, k] : c.terms()) {
    std::vector<BigRat> p = project(s);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += BigRat(k) * p[i];
  }
  return out;
}

ModularSymbol ManinSpace::basis_symbol(std::size_t k) const {
  auto s = ModularSymbol::from_matrix(p1_.lift(basis_[k]));
  return *s;
}

ManinSpace build_manin_space(long level) {
  ManinSpace space(level);
  const P1List& p1 = space.p1_;
  const std::size_t gens = p1.size();
  std::vector<std::vector<BigRat>> rows;
  auto push = [&](const std::vector<GeneratorTerm>& terms) {
    std::vector<BigRat> row(gens);
    for (const auto& t : terms) row[t.index] += t.sign;
    bool zero = true;
    for (const auto& x : row) zero = zero && x == 0;
    if (!zero) rows.push_back(std::move(row));
  };
  // Signed permutation matrices h and the sign relation 2 assigns to them.
  const std::vector<std::pair<IntMatrix, int>> presentations = {
      {mat2(-1, 0, 0, 1), 1}, {mat2(1, 0, 0, -1), 1}, {mat2(-1, 0, 0, -1), 1},
      {mat2(0, 1, 1, 0), -1}, {mat2(0, -1, 1, 0), -1}, {mat2(0, 1, -1, 0), -1}, {mat2(0, -1, -1, 0), -1}};
  for (std::size_t i = 0; i < gens; ++i) {
    IntMatrix g = p1.lift(i);
    GeneratorTerm base = raw_generator(p1, g);
    // Relation 2: [g h e1, g h e2] = eps(h) [g e1, g e2].
    for (const auto& [h, eps] : presentations) {
      GeneratorTerm t = raw_generator(p1, g * h);
      push({t, {base.index, -eps * base.sign}});
    }
    // Relation 4 with v = g(e1 + e2): [g e1, g e2] = [v, g e2] + [g e1, v].
    GeneratorTerm left = raw_generator(p1, g * mat2(1, 0, 1, 1));
    GeneratorTerm right = raw_generator(p1, g * mat2(1, 1, 0, 1));
    push({base, {left.index, -left.sign}, {right.index, -right.sign}});
  }
  RatMatrix r(rows.size(), gens);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < gens; ++j) r(i, j) = rows[i][j];
  space.relations_ = r;

  RatMatrix e = r;
  std::vector<std::size_t> pivots = rref(e);
  std::vector<bool> is_pivot(gens, false);
  for (auto p : pivots) is_pivot[p] = true;
  for (std::size_t j = 0; j < gens; ++j)
    if (!is_pivot[j]) space.basis_.push_back(j);
  const std::size_t dim = space.basis_.size();
  space.projection_ = RatMatrix(dim, gens);
  for (std::size_t k = 0; k < dim; ++k) space.projection_(k, space.basis_[k]) = 1;
  for (std::size_t row = 0; row < pivots.size(); ++row) {
    std::size_t pc = pivots[row];
    for (std::size_t k = 0; k < dim; ++k) space.projection_(k, pc) = -e(row, space.basis_[k]);
  }

  // Self-tests.
  if (!(space.projection_ * r.transpose()).is_zero())
    throw InternalError("Manin projection does not annihilate the relations");
  for (std::size_t k = 0; k < dim; ++k)
    for (std::size_t l = 0; l < dim; ++l)
      if (space.projection_(l, space.basis_[k]) != (k == l ? 1 : 0))
        throw InternalError("Manin projection is not the identity on the basis");
  return space;
}

}  // namespace modsym

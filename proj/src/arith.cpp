#include "modsym/arith.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>

namespace modsym {

BigRat make_rat(const BigInt& num, const BigInt& den) {
  if (den == 0) throw DegenerateInputError("zero denominator");
  BigRat q(num, den);
  q.canonicalize();
  return q;
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

BigInt round_nearest(const BigRat& q) {
  // floor(q + 1/2)
  BigRat shifted = q + BigRat(1, 2);
  return floor_div(shifted.get_num(), shifted.get_den());
}

BigInt abs_int(const BigInt& a) { return a < 0 ? BigInt(-a) : a; }

IntVector::IntVector(std::initializer_list<long> entries) {
  entries_.reserve(entries.size());
  for (long x : entries) entries_.emplace_back(x);
}

bool IntVector::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const BigInt& x) { return x == 0; });
}

BigInt IntVector::content() const {
  BigInt g = 0;
  for (const auto& x : entries_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

IntVector IntVector::operator-() const {
  IntVector r = *this;
  for (auto& x : r.entries_) x = -x;
  return r;
}

IntVector& IntVector::operator+=(const IntVector& other) {
  if (size() != other.size()) throw DimensionError("vector sum: dimensions differ");
  for (std::size_t i = 0; i < size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

IntVector& IntVector::operator-=(const IntVector& other) {
  if (size() != other.size()) throw DimensionError("vector difference: dimensions differ");
  for (std::size_t i = 0; i < size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

IntVector& IntVector::operator*=(const BigInt& s) {
  for (auto& x : entries_) x *= s;
  return *this;
}

std::string IntVector::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < size(); ++i) {
    if (i) os << ',';
    os << entries_[i].get_str();
  }
  os << ')';
  return os.str();
}

IntVector operator+(IntVector a, const IntVector& b) { return a += b; }
IntVector operator-(IntVector a, const IntVector& b) { return a -= b; }
IntVector operator*(const BigInt& s, IntVector v) { return v *= s; }

BigInt dot(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw DimensionError("dot product: dimensions differ");
  BigInt s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

int compare(const IntVector& a, const IntVector& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0 ? -1 : 1;
  }
  if (a.size() == b.size()) return 0;
  return a.size() < b.size() ? -1 : 1;
}

std::size_t IntVectorHash::operator()(const IntVector& v) const {
  std::size_t h = 0x9e3779b97f4a7c15ULL ^ v.size();
  for (const auto& x : v) {
    std::size_t limb = mpz_size(x.get_mpz_t()) ? mpz_getlimbn(x.get_mpz_t(), 0) : 0;
    limb ^= static_cast<std::size_t>(mpz_sgn(x.get_mpz_t()) + 1) << 61;
    h ^= limb + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

IntMatrix from_columns(std::span<const IntVector> columns) {
  if (columns.empty()) return {};
  const std::size_t n = columns.front().size();
  IntMatrix m(n, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != n) throw DimensionError("columns of differing dimension");
    for (std::size_t i = 0; i < n; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

IntVector column(const IntMatrix& m, std::size_t j) {
  IntVector v(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m(i, j);
  return v;
}

std::vector<IntVector> columns_of(const IntMatrix& m) {
  std::vector<IntVector> cols;
  cols.reserve(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(column(m, j));
  return cols;
}

IntVector operator*(const IntMatrix& m, const IntVector& v) {
  if (m.cols() != v.size()) throw DimensionError("matrix-vector product: dimensions differ");
  IntVector r(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i] += m(i, j) * v[j];
  return r;
}

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
  return r;
}

namespace {

using i128 = __int128;

// Copies entries into `out` when n <= 4 and every |entry| < 2^28; the
// cofactor formulas below then cannot overflow 128 bits.
bool small_square(const IntMatrix& m, int64_t* out) {
  const std::size_t n = m.rows();
  if (n > 4) return false;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      const BigInt& x = m(r, c);
      if (mpz_sizeinbase(x.get_mpz_t(), 2) > 28) return false;
      out[r * n + c] = x.get_si();
    }
  return true;
}

i128 small_det(const int64_t* a, std::size_t n) {
  switch (n) {
    case 1: return a[0];
    case 2: return i128(a[0]) * a[3] - i128(a[1]) * a[2];
    case 3:
      return i128(a[0]) * (i128(a[4]) * a[8] - i128(a[5]) * a[7]) -
             i128(a[1]) * (i128(a[3]) * a[8] - i128(a[5]) * a[6]) +
             i128(a[2]) * (i128(a[3]) * a[7] - i128(a[4]) * a[6]);
    default: {
      // Laplace expansion along the top two rows.
      i128 sum = 0;
      static const int pairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
      for (int p = 0; p < 6; ++p) {
        int c0 = pairs[p][0], c1 = pairs[p][1];
        int d0 = pairs[5 - p][0], d1 = pairs[5 - p][1];
        i128 top = i128(a[c0]) * a[c1 + 4] - i128(a[c1]) * a[c0 + 4];
        i128 bottom = i128(a[8 + d0]) * a[12 + d1] - i128(a[8 + d1]) * a[12 + d0];
        int parity = (c0 + c1 + 1) % 2;  // sign of the complementary pair
        sum += parity ? -top * bottom : top * bottom;
      }
      return sum;
    }
  }
}

BigInt from_i128(i128 x) {
  bool neg = x < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-x) : static_cast<unsigned __int128>(x);
  BigInt hi = static_cast<unsigned long>(u >> 64);
  BigInt lo = static_cast<unsigned long>(u & ~0UL);
  BigInt r = (hi << 64) + lo;
  return neg ? BigInt(-r) : r;
}

}  // namespace

BigInt det(const IntMatrix& m) {
  if (!m.is_square()) throw DimensionError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  int64_t small[16];
  if (small_square(m, small)) return from_i128(small_det(small, n));
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  IntMatrix a = m;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign > 0 ? a(n - 1, n - 1) : BigInt(-a(n - 1, n - 1));
}

BigRat det(const RatMatrix& m) {
  if (!m.is_square()) throw DimensionError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix a = m;
  BigRat d = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      d = -d;
    }
    d *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      BigRat f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return d;
}

IntMatrix adjugate(const IntMatrix& m) {
  if (!m.is_square()) throw DimensionError("adjugate of a non-square matrix");
  const std::size_t n = m.rows();
  IntMatrix adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  if (n == 2) {
    adj(0, 0) = m(1, 1);
    adj(0, 1) = -m(0, 1);
    adj(1, 0) = -m(1, 0);
    adj(1, 1) = m(0, 0);
    return adj;
  }
  int64_t small[16];
  if (small_square(m, small)) {
    int64_t minor[9];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        std::size_t k = 0;
        for (std::size_t r = 0; r < n; ++r)
          for (std::size_t c = 0; c < n; ++c)
            if (r != i && c != j) minor[k++] = small[r * n + c];
        BigInt d = from_i128(small_det(minor, n - 1));
        adj(j, i) = ((i + j) % 2 == 0) ? d : BigInt(-d);
      }
    return adj;
  }
  IntMatrix minor(n - 1, n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // adj(j, i) = (-1)^{i+j} det(m without row i and column j)
      for (std::size_t r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (std::size_t c = 0, cc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(rr, cc++) = m(r, c);
        }
        ++rr;
      }
      BigInt d = det(minor);
      adj(j, i) = ((i + j) % 2 == 0) ? d : BigInt(-d);
    }
  }
  return adj;
}

namespace {

// Row echelon form over Q; returns pivot columns.
std::vector<std::size_t> echelon(RatMatrix& a) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t p = row;
    while (p < a.rows() && a(p, col) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(row, j), a(p, j));
    BigRat inv = 1 / a(row, col);
    for (std::size_t j = col; j < a.cols(); ++j) a(row, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col) == 0) continue;
      BigRat f = a(i, col);
      for (std::size_t j = col; j < a.cols(); ++j) a(i, j) -= f * a(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const IntMatrix& m) {
  RatMatrix a = to_rational(m);
  return echelon(a).size();
}

RatMatrix inverse(const RatMatrix& m) {
  if (!m.is_square()) throw DimensionError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto pivots = echelon(aug);
  if (pivots.size() < n || pivots.back() >= n) throw RankError("singular matrix has no inverse");
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

Primitive make_primitive(std::span<const BigRat> v) {
  BigInt lcm = 1;
  for (const auto& q : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
  IntVector ints(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) ints[i] = v[i].get_num() * (lcm / v[i].get_den());
  return make_primitive(ints);
}

Primitive make_primitive(const IntVector& v) {
  BigInt g = v.content();
  if (g == 0) throw DegenerateInputError("cannot primitivize the zero vector");
  Primitive p{v, 1};
  for (std::size_t i = 0; i < v.size(); ++i) mpz_divexact(p.vector[i].get_mpz_t(), v[i].get_mpz_t(), g.get_mpz_t());
  for (const auto& x : p.vector) {
    if (x == 0) continue;
    if (x < 0) {
      p.vector = -p.vector;
      p.orientation = -1;
    }
    break;
  }
  return p;
}

IntVector primitive_part(const IntVector& v) { return make_primitive(v).vector; }

bool is_primitive(const IntVector& v) {
  if (v.content() != 1) return false;
  for (const auto& x : v)
    if (x != 0) return x > 0;
  return false;
}

IntMatrix integer_kernel(const IntMatrix& a) {
  const std::size_t c = a.cols();
  IntMatrix m = a;
  IntMatrix u = IntMatrix::identity(c);
  std::size_t p = 0;
  auto column_op = [&](std::size_t j, std::size_t k, const BigInt& x, const BigInt& y, const BigInt& z,
                       const BigInt& w) {
    // (col_j, col_k) <- (x col_j + y col_k, z col_j + w col_k)
    for (IntMatrix* t : {&m, &u}) {
      for (std::size_t r = 0; r < t->rows(); ++r) {
        BigInt cj = (*t)(r, j), ck = (*t)(r, k);
        (*t)(r, j) = x * cj + y * ck;
        (*t)(r, k) = z * cj + w * ck;
      }
    }
  };
  for (std::size_t i = 0; i < m.rows() && p < c; ++i) {
    for (std::size_t j = p + 1; j < c; ++j) {
      if (m(i, j) == 0) continue;
      if (m(i, p) == 0) {
        m.swap_columns(p, j);
        u.swap_columns(p, j);
        continue;
      }
      BigInt g, x, y;
      mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), m(i, p).get_mpz_t(), m(i, j).get_mpz_t());
      BigInt ap = m(i, p) / g, aj = m(i, j) / g;
      column_op(p, j, x, y, -aj, ap);
    }
    if (m(i, p) != 0) ++p;
  }
  IntMatrix kernel(c, c - p);
  for (std::size_t j = p; j < c; ++j)
    for (std::size_t r = 0; r < c; ++r) kernel(r, j - p) = u(r, j);
  return kernel;
}

std::vector<BigRat> solve_in_span(const IntMatrix& b, const IntVector& v) {
  if (b.rows() != v.size()) throw DimensionError("solve: dimensions differ");
  const std::size_t k = b.cols();
  RatMatrix aug(b.rows(), k + 1);
  for (std::size_t i = 0; i < b.rows(); ++i) {
    for (std::size_t j = 0; j < k; ++j) aug(i, j) = b(i, j);
    aug(i, k) = v[i];
  }
  auto pivots = echelon(aug);
  if (!pivots.empty() && pivots.back() == k) throw RankError("vector is not in the span");
  if (pivots.size() < k) throw RankError("spanning columns are dependent");
  std::vector<BigRat> x(k);
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, k);
  return x;
}

std::string to_string(const BigInt& x) { return x.get_str(); }
std::string to_string(const BigRat& x) { return x.get_str(); }

}  // namespace modsym

#pragma once

// Exact scalar, vector and matrix types. Everything here is exact; there is
// no floating point anywhere in the library.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "modsym/error.hpp"

namespace modsym {

using BigInt = mpz_class;
using BigRat = mpq_class;  // always canonical: lowest terms, positive denominator

BigRat make_rat(const BigInt& num, const BigInt& den);
BigInt floor_div(const BigInt& a, const BigInt& b);
// Nearest integer, halves rounded up.
BigInt round_nearest(const BigRat& q);
BigInt abs_int(const BigInt& a);

class IntVector {
 public:
  IntVector() = default;
  explicit IntVector(std::size_t n) : entries_(n) {}
  explicit IntVector(std::vector<BigInt> entries) : entries_(std::move(entries)) {}
  IntVector(std::initializer_list<long> entries);

  std::size_t size() const { return entries_.size(); }
  const BigInt& operator[](std::size_t i) const { return entries_[i]; }
  BigInt& operator[](std::size_t i) { return entries_[i]; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }
  const std::vector<BigInt>& entries() const { return entries_; }

  bool is_zero() const;
  // gcd of the entries, zero for the zero vector.
  BigInt content() const;
  IntVector operator-() const;
  IntVector& operator+=(const IntVector& other);
  IntVector& operator-=(const IntVector& other);
  IntVector& operator*=(const BigInt& s);

  std::string str() const;

 private:
  std::vector<BigInt> entries_;
};

IntVector operator+(IntVector a, const IntVector& b);
IntVector operator-(IntVector a, const IntVector& b);
IntVector operator*(const BigInt& s, IntVector v);
BigInt dot(const IntVector& a, const IntVector& b);

// Lexicographic total order on entries.
int compare(const IntVector& a, const IntVector& b);
inline bool operator==(const IntVector& a, const IntVector& b) { return compare(a, b) == 0; }
inline bool operator!=(const IntVector& a, const IntVector& b) { return compare(a, b) != 0; }
inline bool operator<(const IntVector& a, const IntVector& b) { return compare(a, b) < 0; }

struct IntVectorHash {
  std::size_t operator()(const IntVector& v) const;
};

template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  void swap_columns(std::size_t a, std::size_t b) {
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw DimensionError("matrix product: inner dimensions differ");
    Matrix p(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        if ((*this)(i, k) == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) p(i, j) += (*this)(i, k) * o(k, j);
      }
    return p;
  }

  Matrix operator+(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix sum: shapes differ");
    Matrix s = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) s.data_[i] += o.data_[i];
    return s;
  }

  Matrix operator-(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix difference: shapes differ");
    Matrix s = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) s.data_[i] -= o.data_[i];
    return s;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (x != 0) return false;
    return true;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<BigInt>;
using RatMatrix = Matrix<BigRat>;

IntMatrix from_columns(std::span<const IntVector> columns);
IntVector column(const IntMatrix& m, std::size_t j);
std::vector<IntVector> columns_of(const IntMatrix& m);
IntVector operator*(const IntMatrix& m, const IntVector& v);
RatMatrix to_rational(const IntMatrix& m);

// Fraction-free Bareiss elimination.
BigInt det(const IntMatrix& m);
BigRat det(const RatMatrix& m);
// adj(m) with m * adj(m) = det(m) * I.
IntMatrix adjugate(const IntMatrix& m);
// Rank over Q.
std::size_t rank(const IntMatrix& m);
// Inverse over Q; throws RankError when singular.
RatMatrix inverse(const RatMatrix& m);

struct Primitive {
  IntVector vector;
  int orientation = 1;  // sign of q in v = q * vector
};

// Unique w = v / q (q rational) that is integral, has content 1 and a
// positive leading nonzero entry.
Primitive make_primitive(std::span<const BigRat> v);
Primitive make_primitive(const IntVector& v);
// Sign-normalized primitive part, orientation dropped.
IntVector primitive_part(const IntVector& v);
bool is_primitive(const IntVector& v);

// Basis (as columns) of the saturated lattice {x in Z^c : A x = 0}.
IntMatrix integer_kernel(const IntMatrix& a);

// Solve B x = v for x over Q; throws RankError if no solution exists.
std::vector<BigRat> solve_in_span(const IntMatrix& b, const IntVector& v);

std::string to_string(const BigInt& x);
std::string to_string(const BigRat& x);

}  // namespace modsym

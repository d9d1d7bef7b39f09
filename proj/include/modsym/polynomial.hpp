#pragma once

#include <string>
#include <vector>

#include "modsym/arith.hpp"

namespace modsym {

// Dense univariate polynomial over Q, coefficients stored low degree first,
// no trailing zeros.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<BigRat> coefficients);
  static Polynomial monomial(std::size_t degree, const BigRat& c = 1);
  // x - root
  static Polynomial linear(const BigRat& root);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<BigRat>& coefficients() const { return coeffs_; }
  BigRat coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigRat(0); }
  BigRat leading() const { return coeffs_.empty() ? BigRat(0) : coeffs_.back(); }

  BigRat evaluate(const BigRat& x) const;
  RatMatrix evaluate(const RatMatrix& m) const;
  Polynomial monic() const;
  Polynomial derivative() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  bool operator==(const Polynomial& o) const { return coeffs_ == o.coeffs_; }

  // Euclidean division; throws on a zero divisor.
  void divmod(const Polynomial& divisor, Polynomial& quotient, Polynomial& remainder) const;

  // Human-readable form in the variable x, e.g. "x^2 - x - 6".
  std::string str() const;

 private:
  void trim();
  std::vector<BigRat> coeffs_;
};

Polynomial gcd(Polynomial a, Polynomial b);

// Characteristic polynomial det(xI - M), monic of degree = size. Computed by
// reduction to upper Hessenberg form and the standard recurrence.
Polynomial charpoly(const RatMatrix& m);

struct RationalRoot {
  BigRat value;
  int multiplicity = 0;
};

struct FactorPower {
  Polynomial factor;  // monic, squarefree, no rational roots
  int multiplicity = 0;
};

struct Factorization {
  std::vector<RationalRoot> roots;          // sorted by value
  std::vector<FactorPower> other_factors;   // remaining squarefree pieces
  std::string str() const;                  // e.g. "(x - 3)(x + 2)^2"
};

// Rational roots with multiplicity, followed by a squarefree decomposition of
// what remains. Remaining factors are not split further over Q.
Factorization factor_over_q(const Polynomial& p);

}  // namespace modsym

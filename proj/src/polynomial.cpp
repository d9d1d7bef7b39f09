#include "modsym/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace modsym {

Polynomial::Polynomial(std::vector<BigRat> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

Polynomial Polynomial::monomial(std::size_t degree, const BigRat& c) {
  std::vector<BigRat> v(degree + 1);
  v[degree] = c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::linear(const BigRat& root) { return Polynomial({BigRat(-root), BigRat(1)}); }

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigRat Polynomial::evaluate(const BigRat& x) const {
  BigRat acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

RatMatrix Polynomial::evaluate(const RatMatrix& m) const {
  if (!m.is_square()) throw DimensionError("polynomial of a non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix acc(n, n);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * m;
    for (std::size_t i = 0; i < n; ++i) acc(i, i) += *it;
  }
  return acc;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  std::vector<BigRat> v = coeffs_;
  BigRat lead = v.back();
  for (auto& c : v) c /= lead;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<BigRat> v(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) v[i - 1] = coeffs_[i] * BigRat(static_cast<long>(i));
  return Polynomial(std::move(v));
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<BigRat> v(std::max(coeffs_.size(), o.coeffs_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = coefficient(i) + o.coefficient(i);
  return Polynomial(std::move(v));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  std::vector<BigRat> v(std::max(coeffs_.size(), o.coeffs_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = coefficient(i) - o.coefficient(i);
  return Polynomial(std::move(v));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<BigRat> v(coeffs_.size() + o.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) v[i + j] += coeffs_[i] * o.coeffs_[j];
  return Polynomial(std::move(v));
}

void Polynomial::divmod(const Polynomial& divisor, Polynomial& quotient, Polynomial& remainder) const {
  if (divisor.is_zero()) throw DegenerateInputError("polynomial division by zero");
  std::vector<BigRat> rem = coeffs_;
  const int dd = divisor.degree();
  std::vector<BigRat> quo(std::max(0, degree() - dd + 1));
  for (int k = degree() - dd; k >= 0; --k) {
    BigRat c = rem[k + dd] / divisor.leading();
    quo[k] = c;
    if (c == 0) continue;
    for (int i = 0; i <= dd; ++i) rem[k + i] -= c * divisor.coeffs_[i];
  }
  quotient = Polynomial(std::move(quo));
  remainder = Polynomial(std::move(rem));
}

std::string Polynomial::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const BigRat& c = coeffs_[i];
    if (c == 0) continue;
    BigRat mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0 || mag != 1) {
      os << mag.get_str();
      if (i > 0) os << '*';
    }
    if (i >= 1) os << 'x';
    if (i >= 2) os << '^' << i;
  }
  return os.str();
}

Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial q, r;
    a.divmod(b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Polynomial charpoly(const RatMatrix& m) {
  if (!m.is_square()) throw DimensionError("characteristic polynomial of a non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix h = m;
  for (std::size_t j = 0; j + 2 < n; ++j) {
    std::size_t i = j + 1;
    while (i < n && h(i, j) == 0) ++i;
    if (i == n) continue;
    if (i != j + 1) {
      for (std::size_t c = 0; c < n; ++c) std::swap(h(i, c), h(j + 1, c));
      h.swap_columns(i, j + 1);
    }
    for (std::size_t r = j + 2; r < n; ++r) {
      if (h(r, j) == 0) continue;
      BigRat f = h(r, j) / h(j + 1, j);
      for (std::size_t c = 0; c < n; ++c) h(r, c) -= f * h(j + 1, c);
      for (std::size_t c = 0; c < n; ++c) h(c, j + 1) += f * h(c, r);
    }
  }
  // p[k] = charpoly of the leading k x k block
  std::vector<Polynomial> p(n + 1);
  p[0] = Polynomial({BigRat(1)});
  const Polynomial x = Polynomial::monomial(1);
  for (std::size_t k = 1; k <= n; ++k) {
    p[k] = (x - Polynomial({h(k - 1, k - 1)})) * p[k - 1];
    BigRat t = 1;
    for (std::size_t i = k - 1; i >= 1; --i) {
      t *= h(i, i - 1);
      if (t == 0) break;
      p[k] = p[k] - Polynomial({t * h(i - 1, k - 1)}) * p[i - 1];
    }
  }
  return p[n];
}

namespace {

// Integer coefficients with content 1 and positive leading coefficient.
std::vector<BigInt> primitive_integer(const Polynomial& p) {
  BigInt lcm = 1;
  for (const auto& c : p.coefficients()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
  std::vector<BigInt> a;
  BigInt g = 0;
  for (const auto& c : p.coefficients()) {
    a.push_back(c.get_num() * (lcm / c.get_den()));
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.back().get_mpz_t());
  }
  if (a.back() < 0) g = -g;
  for (auto& x : a) x /= g;
  return a;
}

std::vector<BigInt> positive_divisors(BigInt n) {
  n = abs_int(n);
  std::vector<std::pair<BigInt, int>> factors;
  for (BigInt p = 2; p * p <= n && p < 2000000; ++p) {
    int e = 0;
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
      n /= p;
      ++e;
    }
    if (e) factors.emplace_back(p, e);
  }
  if (n > 1) factors.emplace_back(n, 1);
  std::vector<BigInt> divs{1};
  for (const auto& [p, e] : factors) {
    const std::size_t base = divs.size();
    BigInt pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

// Bound on the absolute value of any root (Fujiwara).
BigInt root_bound(const std::vector<BigInt>& a) {
  const std::size_t n = a.size() - 1;
  BigInt best = 0;
  const BigInt lead = abs_int(a[n]);
  for (std::size_t k = 1; k <= n; ++k) {
    BigInt num = abs_int(a[n - k]);
    if (k == n) num = (num + 1) / 2 + 1;
    BigInt ratio = (num + lead - 1) / lead;
    BigInt r;
    mpz_root(r.get_mpz_t(), ratio.get_mpz_t(), static_cast<unsigned long>(k));
    r += 1;
    if (r > best) best = r;
  }
  return 2 * best;
}

bool is_root(const std::vector<BigInt>& a, const BigInt& num, const BigInt& den) {
  // sum a_i num^i den^(n-i) == 0
  BigInt acc = 0;
  BigInt den_pow = 1;
  for (std::size_t i = a.size(); i-- > 0;) {
    acc = acc * num + a[i] * den_pow;
    den_pow *= den;
  }
  return acc == 0;
}

}  // namespace

Factorization factor_over_q(const Polynomial& p) {
  Factorization out;
  if (p.degree() <= 0) return out;
  Polynomial rest = p.monic();

  // Root 0 first.
  int zero_mult = 0;
  while (rest.degree() > 0 && rest.coefficient(0) == 0) {
    std::vector<BigRat> v(rest.coefficients().begin() + 1, rest.coefficients().end());
    rest = Polynomial(std::move(v));
    ++zero_mult;
  }

  std::vector<RationalRoot> roots;
  if (zero_mult) roots.push_back({BigRat(0), zero_mult});

  if (rest.degree() > 0) {
    std::vector<BigInt> a = primitive_integer(rest);
    const BigInt bound = root_bound(a);
    std::vector<BigRat> candidates;
    auto consider = [&](const BigInt& num, const BigInt& den) {
      BigInt g;
      mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
      if (g != 1) return;
      if (is_root(a, num, den)) candidates.push_back(make_rat(num, den));
    };
    std::vector<BigInt> num_divs;
    bool have_num_divs = false;
    for (const BigInt& den : positive_divisors(a.back())) {
      const BigInt limit = bound * den;
      if (limit <= 2000000) {
        for (BigInt num = -limit; num <= limit; ++num) {
          if (num == 0 || !mpz_divisible_p(a.front().get_mpz_t(), num.get_mpz_t())) continue;
          consider(num, den);
        }
      } else {
        if (!have_num_divs) {
          num_divs = positive_divisors(a.front());
          have_num_divs = true;
        }
        for (const BigInt& d : num_divs) {
          if (d > limit) break;
          consider(d, den);
          consider(-d, den);
        }
      }
    }
    for (const BigRat& r : candidates) {
      int mult = 0;
      while (rest.degree() > 0 && rest.evaluate(r) == 0) {
        Polynomial q, rem;
        rest.divmod(Polynomial::linear(r), q, rem);
        rest = q;
        ++mult;
      }
      if (mult) roots.push_back({r, mult});
    }
  }
  std::sort(roots.begin(), roots.end(), [](const RationalRoot& x, const RationalRoot& y) { return x.value > y.value; });
  out.roots = std::move(roots);

  // Yun's squarefree decomposition of the remainder.
  if (rest.degree() > 0) {
    Polynomial f = rest.monic();
    Polynomial a0 = gcd(f, f.derivative());
    Polynomial b, c, rem;
    f.divmod(a0, b, rem);
    f.derivative().divmod(a0, c, rem);
    Polynomial d = c - b.derivative();
    for (int i = 1; b.degree() > 0; ++i) {
      Polynomial ai = gcd(b, d);
      Polynomial nb, nc;
      b.divmod(ai, nb, rem);
      d.divmod(ai, nc, rem);
      if (ai.degree() > 0) out.other_factors.push_back({ai.monic(), i});
      b = nb;
      d = nc - b.derivative();
    }
  }
  return out;
}

std::string Factorization::str() const {
  std::ostringstream os;
  for (const auto& r : roots) {
    if (r.value == 0) {
      os << 'x';
    } else {
      os << "(x " << (r.value < 0 ? "+ " : "- ") << BigRat(abs(r.value)).get_str() << ')';
    }
    if (r.multiplicity > 1) os << '^' << r.multiplicity;
  }
  for (const auto& f : other_factors) {
    os << '(' << f.factor.str() << ')';
    if (f.multiplicity > 1) os << '^' << f.multiplicity;
  }
  std::string s = os.str();
  return s.empty() ? "1" : s;
}

}  // namespace modsym

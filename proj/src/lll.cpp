#include "modsym/lll.hpp"

#include <vector>

namespace modsym {

namespace {

BigInt column_dot(const IntMatrix& b, std::size_t i, std::size_t j) {
  BigInt s = 0;
  for (std::size_t r = 0; r < b.rows(); ++r) s += b(r, i) * b(r, j);
  return s;
}

void column_axpy(IntMatrix& b, std::size_t k, std::size_t l, const BigInt& q) {
  // b_k -= q b_l
  for (std::size_t r = 0; r < b.rows(); ++r) b(r, k) -= q * b(r, l);
}

struct IntegralLll {
  IntMatrix b;
  IntMatrix h;
  std::vector<BigInt> d;                 // d[0] = 1, d[i] = Gram determinant of b_1..b_i
  std::vector<std::vector<BigInt>> lam;  // lam[k][j], 1-based, j < k
  BigInt delta_num, delta_den;
  std::size_t n;

  IntegralLll(const IntMatrix& basis, const BigRat& delta)
      : b(basis), h(IntMatrix::identity(basis.cols())), d(basis.cols() + 1),
        lam(basis.cols() + 1, std::vector<BigInt>(basis.cols() + 1)),
        delta_num(delta.get_num()), delta_den(delta.get_den()), n(basis.cols()) {}

  // 1-based column access.
  void red(std::size_t k, std::size_t l) {
    BigInt two_abs = 2 * abs_int(lam[k][l]);
    if (two_abs <= d[l]) return;
    BigInt q = round_nearest(make_rat(lam[k][l], d[l]));
    column_axpy(h, k - 1, l - 1, q);
    column_axpy(b, k - 1, l - 1, q);
    lam[k][l] -= q * d[l];
    for (std::size_t i = 1; i < l; ++i) lam[k][i] -= q * lam[l][i];
  }

  void swap(std::size_t k, std::size_t kmax) {
    h.swap_columns(k - 1, k - 2);
    b.swap_columns(k - 1, k - 2);
    for (std::size_t j = 1; j + 1 < k; ++j) std::swap(lam[k][j], lam[k - 1][j]);
    BigInt lambda = lam[k][k - 1];
    BigInt bb = (d[k - 2] * d[k] + lambda * lambda) / d[k - 1];
    for (std::size_t i = k + 1; i <= kmax; ++i) {
      BigInt t = lam[i][k];
      lam[i][k] = (d[k] * lam[i][k - 1] - lambda * t) / d[k - 1];
      lam[i][k - 1] = (bb * t + lambda * lam[i][k]) / d[k];
    }
    d[k - 1] = bb;
  }

  void run() {
    if (n == 0) return;
    d[0] = 1;
    d[1] = column_dot(b, 0, 0);
    if (d[1] == 0) throw RankError("LLL: zero basis vector");
    std::size_t k = 2, kmax = 1;
    while (k <= n) {
      if (k > kmax) {
        kmax = k;
        for (std::size_t j = 1; j <= k; ++j) {
          BigInt u = column_dot(b, k - 1, j - 1);
          for (std::size_t i = 1; i < j; ++i) u = (d[i] * u - lam[k][i] * lam[j][i]) / d[i - 1];
          if (j < k) {
            lam[k][j] = u;
          } else {
            if (u == 0) throw RankError("LLL: basis columns are linearly dependent");
            d[k] = u;
          }
        }
      }
      red(k, k - 1);
      // Lovasz: swap when delta d_{k-1}^2 - lambda^2 > d_k d_{k-2}
      BigInt lhs = delta_den * d[k] * d[k - 2];
      BigInt rhs = delta_num * d[k - 1] * d[k - 1] - delta_den * lam[k][k - 1] * lam[k][k - 1];
      if (lhs < rhs) {
        swap(k, kmax);
        if (k > 2) --k;
        continue;
      }
      for (std::size_t l = k - 1; l-- > 1;) red(k, l);
      ++k;
    }
  }
};

}  // namespace

LllResult lll_reduce(const IntMatrix& basis, const BigRat& delta) {
  if (delta <= BigRat(1, 4) || delta > 1) throw PreconditionError("LLL delta must lie in (1/4, 1]");
  IntegralLll lll(basis, delta);
  lll.run();
  return {lll.b, lll.h};
}

bool is_lll_reduced(const IntMatrix& basis, const BigRat& delta) {
  const std::size_t n = basis.cols();
  const std::size_t dim = basis.rows();
  std::vector<std::vector<BigRat>> star(n, std::vector<BigRat>(dim));
  std::vector<BigRat> norms(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t r = 0; r < dim; ++r) star[k][r] = basis(r, k);
    for (std::size_t j = 0; j < k; ++j) {
      BigRat num = 0;
      for (std::size_t r = 0; r < dim; ++r) num += BigRat(basis(r, k)) * star[j][r];
      BigRat mu = num / norms[j];
      if (abs(mu) > BigRat(1, 2)) return false;
      for (std::size_t r = 0; r < dim; ++r) star[k][r] -= mu * star[j][r];
    }
    norms[k] = 0;
    for (std::size_t r = 0; r < dim; ++r) norms[k] += star[k][r] * star[k][r];
    if (norms[k] == 0) return false;
    if (k > 0) {
      BigRat num = 0;
      for (std::size_t r = 0; r < dim; ++r) num += BigRat(basis(r, k)) * star[k - 1][r];
      BigRat mu = num / norms[k - 1];
      if (norms[k] < (delta - mu * mu) * norms[k - 1]) return false;
    }
  }
  return true;
}

}  // namespace modsym
